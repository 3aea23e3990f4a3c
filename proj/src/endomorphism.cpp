#include "outspace/endomorphism.hpp"

#include <algorithm>
#include <sstream>

#include "outspace/error.hpp"
#include "outspace/fold.hpp"

namespace outspace {

Endomorphism::Endomorphism(int rank, std::vector<Word> images) : rank_(rank), images_(std::move(images)) {
  require(rank >= 1, "endomorphism rank must be positive");
  require(static_cast<int>(images_.size()) == rank, "endomorphism needs one image per basis letter");
  for (const Word& w : images_)
    for (Letter l : w.letters()) require(l.index() <= rank, "image letter out of range");
  for (Word& w : images_) w = Word(rank, std::span<const Letter>(w.letters()));
}

Endomorphism Endomorphism::identity(int rank) {
  std::vector<Word> im;
  for (int i = 1; i <= rank; ++i) im.push_back(Word::generator(rank, i));
  return Endomorphism(rank, std::move(im));
}

Word Endomorphism::apply(const Word& w) const {
  std::size_t c = 0;
  return apply(w, c);
}

Word Endomorphism::apply(const Word& w, std::size_t& cancellations) const {
  require(w.rank() <= rank_ || w.empty(), "rank mismatch in apply");
  WordBuilder b(rank_);
  for (Letter l : w.letters()) {
    require(l.index() <= rank_, "rank mismatch in apply");
    if (l.sign() > 0)
      b.append(images_[l.index() - 1]);
    else
      b.append_inverse(images_[l.index() - 1]);
  }
  cancellations = b.cancellations();
  return std::move(b).finish();
}

std::string Endomorphism::str() const {
  std::string s;
  for (int i = 0; i < rank_; ++i) {
    if (i) s += "; ";
    s += "a" + std::to_string(i + 1) + " -> " + images_[i].str();
  }
  return s;
}

Endomorphism compose(const Endomorphism& f, const Endomorphism& g) {
  require(f.rank() == g.rank(), "rank mismatch in compose");
  std::vector<Word> im;
  im.reserve(g.rank());
  for (const Word& w : g.images()) im.push_back(f.apply(w));
  return Endomorphism(f.rank(), std::move(im));
}

std::optional<Endomorphism> is_automorphism(const Endomorphism& f) {
  const int n = f.rank();
  FoldGraph fg(n);
  int base = fg.add_vertex();
  fg.set_base(base);
  for (int i = 1; i <= n; ++i) {
    const Word& w = f.image(i);
    if (w.empty()) return std::nullopt;
    int prev = base;
    for (std::size_t k = 0; k < w.size(); ++k) {
      int next = k + 1 == w.size() ? base : fg.add_vertex();
      fg.add_edge(prev, next, w[k].value, k == 0 ? Word::generator(n, i) : Word(n));
      prev = next;
    }
  }
  FoldedGraph g = std::move(fg).fold();
  if (!g.injective || g.num_vertices() != 1 || static_cast<int>(g.edges.size()) != n) return std::nullopt;
  std::vector<Word> inv(n, Word(n));
  std::vector<bool> hit(n, false);
  for (const auto& e : g.edges) {
    int idx = std::abs(e.label);
    if (hit[idx - 1]) return std::nullopt;
    hit[idx - 1] = true;
    Word t = e.label > 0 ? e.track : e.track.inverse();
    inv[idx - 1] = g.base_conj * t * g.base_conj.inverse();
  }
  Endomorphism h(n, std::move(inv));
  if (!(compose(f, h) == Endomorphism::identity(n)) || !(compose(h, f) == Endomorphism::identity(n)))
    violated("fold inverse failed verification");
  return h;
}

Automorphism Automorphism::identity(int rank) {
  return Automorphism(Endomorphism::identity(rank), Endomorphism::identity(rank));
}

Automorphism::Automorphism(const Endomorphism& f) {
  auto inv = is_automorphism(f);
  if (!inv) fail("map is not an automorphism: " + f.str());
  map_ = f;
  inverse_ = *inv;
}

std::optional<Automorphism> Automorphism::verify(const Endomorphism& f) {
  auto inv = is_automorphism(f);
  if (!inv) return std::nullopt;
  return Automorphism(f, *inv);
}

Automorphism Automorphism::inverse() const { return Automorphism(inverse_, map_); }

Automorphism compose(const Automorphism& f, const Automorphism& g) {
  return Automorphism(compose(f.map_, g.map_), compose(g.inverse_, f.inverse_));
}

namespace {

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return w.subword(0, p);
  }
  return w;
}

bool conjugates_all(const Word& g, std::span<const Word> u, std::span<const Word> v) {
  Word gi = g.inverse();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!(gi * u[i] * g == v[i])) return false;
  return true;
}

void check_tuples(std::span<const Word> u, std::span<const Word> v) {
  require(u.size() == v.size(), "conjugator: tuples of different length");
  require(std::any_of(u.begin(), u.end(), [](const Word& w) { return !w.empty(); }) ||
              std::any_of(v.begin(), v.end(), [](const Word& w) { return !w.empty(); }),
          "conjugator: all-trivial tuples");
}

}  // namespace

std::optional<Word> simultaneous_conjugator(std::span<const Word> u, std::span<const Word> v) {
  check_tuples(u, v);
  std::size_t first = u.size();
  std::size_t total = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].empty() != v[i].empty()) return std::nullopt;
    if (!u[i].empty() && first == u.size()) first = i;
    total += u[i].size() + v[i].size();
  }
  auto [c, up] = strip_conjugation(u[first]);
  auto [d, vp] = strip_conjugation(v[first]);
  if (up.size() != vp.size()) return std::nullopt;
  const std::size_t len = up.size();
  std::optional<std::size_t> shift;
  for (std::size_t j = 0; j < len && !shift; ++j) {
    bool ok = true;
    for (std::size_t k = 0; k < len && ok; ++k) ok = vp[k] == up[(j + k) % len];
    if (ok) shift = j;
  }
  if (!shift) return std::nullopt;
  Word head = c * up.subword(0, *shift);
  Word root = primitive_root(vp);
  Word tail = d.inverse();
  const long bound = static_cast<long>(total) + 1;
  std::optional<Word> best;
  long best_t = 0;
  for (long t = -bound; t <= bound; ++t) {
    Word g = head * root.power(t) * tail;
    if (!conjugates_all(g, u, v)) continue;
    auto rank_of = [](const Word& w, long tt) { return std::make_tuple(w.size(), tt < 0 ? -tt : tt, tt < 0); };
    if (!best || rank_of(g, t) < rank_of(*best, best_t)) {
      best = g;
      best_t = t;
    }
  }
  return best;
}

std::optional<Word> simultaneous_conjugator_brute(std::span<const Word> u, std::span<const Word> v, int max_len) {
  check_tuples(u, v);
  int rank = 1;
  for (const auto& w : u) rank = std::max(rank, w.rank());
  for (const auto& w : v) rank = std::max(rank, w.rank());
  // breadth-first over reduced words, so the first hit has minimal length
  std::vector<std::vector<Letter>> layer{{}};
  for (int L = 0; L <= max_len; ++L) {
    std::vector<std::vector<Letter>> next;
    for (const auto& ls : layer) {
      Word g(rank, std::span<const Letter>(ls));
      if (conjugates_all(g, u, v)) return g;
      if (L == max_len) continue;
      for (int i = 1; i <= rank; ++i)
        for (int s : {1, -1}) {
          Letter l(i, s);
          if (!ls.empty() && ls.back() == l.inverse()) continue;
          auto ext = ls;
          ext.push_back(l);
          next.push_back(std::move(ext));
        }
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

Endomorphism parse_endomorphism(int rank, std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (cur.find_first_not_of(" \t\n") != std::string::npos) parts.push_back(cur);
  if (rank <= 0) rank = static_cast<int>(parts.size());
  require(static_cast<int>(parts.size()) == rank, "map must list exactly one image per basis letter");
  std::vector<Word> im(rank, Word(rank));
  std::vector<bool> set(rank, false);
  for (int k = 0; k < rank; ++k) {
    std::string p = parts[k];
    int idx = k + 1;
    auto arrow = p.find("->");
    if (arrow != std::string::npos) {
      Word lhs = parse_word(rank, p.substr(0, arrow));
      require(lhs.size() == 1 && lhs[0].sign() > 0, "map entry must start with a basis letter");
      idx = lhs[0].index();
      p = p.substr(arrow + 2);
    }
    require(!set[idx - 1], "basis letter mapped twice");
    set[idx - 1] = true;
    im[idx - 1] = parse_word(rank, p);
  }
  return Endomorphism(rank, std::move(im));
}

Automorphism NielsenMove::to_automorphism(int rank) const {
  require(i >= 1 && i <= rank && j >= 1 && j <= rank, "Nielsen move index out of range");
  auto id = Endomorphism::identity(rank).images();
  auto fwd = id, bwd = id;
  Word ai = Word::generator(rank, i);
  Word aj = Word::generator(rank, j, sign);
  switch (kind) {
    case Kind::right:
      require(i != j, "transvection needs distinct letters");
      fwd[i - 1] = ai * aj;
      bwd[i - 1] = ai * aj.inverse();
      break;
    case Kind::left:
      require(i != j, "transvection needs distinct letters");
      fwd[i - 1] = aj * ai;
      bwd[i - 1] = aj.inverse() * ai;
      break;
    case Kind::inversion:
      fwd[i - 1] = ai.inverse();
      bwd[i - 1] = ai.inverse();
      break;
    case Kind::transposition:
      std::swap(fwd[i - 1], fwd[j - 1]);
      std::swap(bwd[i - 1], bwd[j - 1]);
      break;
  }
  Endomorphism f(rank, fwd), g(rank, bwd);
  if (!(compose(f, g) == Endomorphism::identity(rank))) violated("Nielsen move inverse mismatch");
  Automorphism a(f);
  return a;
}

std::string NielsenMove::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::right: os << "R(" << i << "," << (sign < 0 ? "-" : "") << j << ")"; break;
    case Kind::left: os << "L(" << i << "," << (sign < 0 ? "-" : "") << j << ")"; break;
    case Kind::inversion: os << "I(" << i << ")"; break;
    case Kind::transposition: os << "P(" << i << "," << j << ")"; break;
  }
  return os.str();
}

Automorphism product(int rank, std::span<const NielsenMove> word) {
  Automorphism acc = Automorphism::identity(rank);
  for (const auto& m : word) acc = compose(acc, m.to_automorphism(rank));
  return acc;
}

}  // namespace outspace
