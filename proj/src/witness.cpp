#include "outspace/witness.hpp"

#include <numeric>
#include <sstream>

#include "outspace/error.hpp"

namespace outspace {

const char* nielsen_set_name(NielsenSet s) { return s == NielsenSet::classical ? "classical" : "transvections"; }

NielsenSet parse_nielsen_set(const std::string& s) {
  if (s == "classical") return NielsenSet::classical;
  if (s == "transvections") return NielsenSet::transvections;
  fail("unknown generating set '" + s + "' (transvections|classical)");
}

WitnessParams WitnessParams::connected(int n, int r) {
  WitnessParams p;
  p.kind = Case::connected;
  p.n = n;
  p.r = r;
  p.validate();
  return p;
}

WitnessParams WitnessParams::two_component(int n, int rank0, int rank1) {
  WitnessParams p;
  p.kind = Case::two_component;
  p.n = n;
  p.ranks = {rank0, rank1};
  p.validate();
  return p;
}

WitnessParams WitnessParams::multi_component(int n, std::vector<int> ranks) {
  WitnessParams p;
  p.kind = Case::multi_component;
  p.n = n;
  p.ranks = std::move(ranks);
  p.validate();
  return p;
}

void WitnessParams::validate() const {
  switch (kind) {
    case Case::connected:
      require(r >= 1 && r <= n - 2, "case 1 needs 1 <= r <= n-2");
      break;
    case Case::two_component:
      require(ranks.size() == 2, "case 2 needs two ranks");
      require(ranks[0] >= 1 && ranks[1] >= 1, "component ranks must be positive");
      require(coindex() >= 2, "case 2 needs coindex >= 2");
      break;
    case Case::multi_component: {
      require(ranks.size() >= 3, "case 3 needs at least three components");
      for (int x : ranks) require(x >= 1, "component ranks must be positive");
      int rest = std::accumulate(ranks.begin() + 2, ranks.end(), 0);
      require(spare() >= rest, "H'_2 must hold the components past the first two (n too small)");
      break;
    }
  }
}

int WitnessParams::coindex() const {
  if (kind == Case::connected) return n - r;
  int c = n - 1;
  for (int x : ranks) c -= x - 1;
  return c;
}

Automorphism theta(int n, int m) {
  require(m >= 2 && m <= n - 1, "theta needs 2 <= m <= n-1");
  std::vector<Word> im;
  for (int i = 1; i <= n; ++i) {
    if (i == 1)
      im.push_back(Word(n, {1, m}));
    else if (i <= m)
      im.push_back(Word::generator(n, i - 1));
    else
      im.push_back(Word::generator(n, i));
  }
  return Automorphism(Endomorphism(n, im));
}

Automorphism theta_inverse(int n, int m) {
  require(m >= 2 && m <= n - 1, "theta needs 2 <= m <= n-1");
  std::vector<Word> im;
  for (int i = 1; i <= n; ++i) {
    if (i < m)
      im.push_back(Word::generator(n, i + 1));
    else if (i == m)
      im.push_back(Word(n, {-2, 1}));
    else
      im.push_back(Word::generator(n, i));
  }
  Automorphism t = Automorphism(Endomorphism(n, im));
  if (compose(theta(n, m), t) != Automorphism::identity(n)) violated("theta_inverse is not inverse to theta");
  return t;
}

namespace {

using K = NielsenMove::Kind;

NielsenMove mv(K k, int i, int j = 1, int s = 1) { return NielsenMove{k, i, j, s}; }

// Appending a move acts on the tuple of images: right(i,j) sets x_i := x_i x_j.
void swap_moves(std::vector<NielsenMove>& w, int i, int j, NielsenSet set) {
  if (set == NielsenSet::classical) {
    w.push_back(mv(K::transposition, i, j));
    return;
  }
  // (x,y) -> (xy,y) -> (xy,x^-1) -> (y,x^-1) -> (y,x)
  w.push_back(mv(K::right, i, j, 1));
  w.push_back(mv(K::right, j, i, -1));
  w.push_back(mv(K::left, i, j, 1));
  w.push_back(mv(K::inversion, j));
}

}  // namespace

std::vector<NielsenMove> theta_word(int n, int m, NielsenSet set) {
  require(m >= 2 && m <= n - 1, "theta needs 2 <= m <= n-1");
  std::vector<NielsenMove> w;
  if (set == NielsenSet::classical) {
    // cyclic shift (a_m, a_1, ..., a_{m-1}), then x_1 := x_2 x_1
    for (int i = m - 1; i >= 1; --i) swap_moves(w, i, i + 1, set);
    w.push_back(mv(K::left, 1, 2, 1));
  } else {
    // (a1 a_m, a2, .., a_{m-1}, a1), then rotate the last m-1 entries
    w.push_back(mv(K::right, 1, m, 1));
    w.push_back(mv(K::inversion, m));
    w.push_back(mv(K::left, m, 1, 1));
    for (int i = m - 1; i >= 2; --i) swap_moves(w, i, i + 1, set);
  }
  if (product(n, w) != theta(n, m)) violated("theta word does not multiply out to theta");
  return w;
}

Word u_k(int n, int m, int k, std::size_t* cancellations) {
  require(k >= 0, "k must be >= 0");
  Automorphism t = theta(n, m);
  Word u = Word::generator(n, 1);
  std::size_t c = 0;
  for (int i = 0; i < k; ++i) u = t.map().apply(u, c);
  if (cancellations) *cancellations += c;
  return u;
}

TransitionMatrix TransitionMatrix::of(const Endomorphism& f, int m) {
  TransitionMatrix t;
  t.a.assign(m, std::vector<BigInt>(m, 0));
  for (int j = 1; j <= m; ++j)
    for (Letter l : f.image(j).letters()) {
      require(l.index() <= m, "image leaves the invariant subrose");
      t.a[l.index() - 1][j - 1] += 1;
    }
  return t;
}

TransitionMatrix TransitionMatrix::identity(int m) {
  TransitionMatrix t;
  t.a.assign(m, std::vector<BigInt>(m, 0));
  for (int i = 0; i < m; ++i) t.a[i][i] = 1;
  return t;
}

TransitionMatrix TransitionMatrix::operator*(const TransitionMatrix& o) const {
  int m = size();
  TransitionMatrix r;
  r.a.assign(m, std::vector<BigInt>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int l = 0; l < m; ++l) {
      if (a[i][l] == 0) continue;
      for (int j = 0; j < m; ++j) r.a[i][j] += a[i][l] * o.a[l][j];
    }
  return r;
}

TransitionMatrix TransitionMatrix::power(int k) const {
  TransitionMatrix result = identity(size()), base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

std::vector<BigInt> TransitionMatrix::column_sums() const {
  std::vector<BigInt> s(size(), 0);
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) s[j] += a[i][j];
  return s;
}

BigInt occurrence_count(int m, int j, int k) {
  require(j >= 1 && j <= m, "letter out of range");
  auto t = TransitionMatrix::of(theta(m + 1, m).map(), m);
  auto col = t.power(k);
  return col.a[j - 1][0];
}

BigInt transition_count(int m, int p, int k) {
  require(p >= 1 && p < m, "split point out of range");
  Endomorphism f = theta(m + 1, m).map();
  // per letter: switches inside Theta^k(a_j), its first and last letter
  std::vector<BigInt> sw(m + 1, 0);
  std::vector<int> first(m + 1), last(m + 1);
  for (int j = 1; j <= m; ++j) first[j] = last[j] = j;
  auto side = [p](int i) { return i <= p ? 0 : 1; };
  for (int step = 0; step < k; ++step) {
    std::vector<BigInt> sw2(m + 1, 0);
    std::vector<int> first2(m + 1), last2(m + 1);
    for (int j = 1; j <= m; ++j) {
      const auto& ls = f.image(j).letters();
      for (std::size_t t = 0; t < ls.size(); ++t) {
        sw2[j] += sw[ls[t].index()];
        if (t > 0 && side(last[ls[t - 1].index()]) != side(first[ls[t].index()])) sw2[j] += 1;
      }
      first2[j] = first[ls.front().index()];
      last2[j] = last[ls.back().index()];
    }
    sw.swap(sw2);
    first.swap(first2);
    last.swap(last2);
  }
  return sw[1];
}

BigInt transition_count_direct(const Word& u, int p) {
  BigInt c = 0;
  for (std::size_t i = 1; i < u.size(); ++i)
    if ((u[i - 1].index() <= p) != (u[i].index() <= p)) c += 1;
  return c;
}

BigRational growth_ratio(int k) {
  BigInt a = occurrence_count(2, 2, k), b = occurrence_count(2, 2, k + 1);
  require(a != 0, "zero count");
  return BigRational(b, a);
}

bool near_golden(const BigRational& x, const BigRational& eps) {
  // phi is the root of t^2 - t - 1 above 1/2, where that polynomial increases
  auto f = [](const BigRational& t) { return t * t - t - 1; };
  BigRational lo = x - eps, hi = x + eps;
  if (lo < BigRational(1, 2)) lo = BigRational(1, 2);
  return f(lo) < 0 && f(hi) > 0;
}

Case2Complex case2_build(const WitnessParams& params) {
  params.validate();
  require(params.kind != WitnessParams::Case::connected, "case2_build needs a multi-component case");
  Case2Complex c;
  c.params = params;
  const int n = params.n, p = params.ranks[0], m = params.m();
  Graph g;
  c.v0 = g.add_vertex("v0");
  c.v1 = g.add_vertex("v1");
  c.v2 = g.add_vertex("v2");
  for (int i = 1; i <= n; ++i) {
    int v = i <= p ? c.v0 : i <= m ? c.v1 : c.v2;
    int e = g.add_edge(v, v, "e" + std::to_string(i));
    (i <= p ? c.H0 : i <= m ? c.H1 : c.H2).push_back(e);
  }
  c.eta0 = g.add_edge(c.v0, c.v1, "h0");
  c.eta1 = g.add_edge(c.v2, c.v1, "h1");
  std::vector<EdgePath> marking;
  for (int i = 1; i <= n; ++i) {
    EdgePath path{c.v1, {}};
    if (i <= p)
      path.edges = {DirEdge::backward(c.eta0), DirEdge::forward(i - 1), DirEdge::forward(c.eta0)};
    else if (i <= m)
      path.edges = {DirEdge::forward(i - 1)};
    else
      path.edges = {DirEdge::backward(c.eta1), DirEdge::forward(i - 1), DirEdge::forward(c.eta1)};
    marking.push_back(path);
  }
  c.Gp = MarkedGraph(g, c.v1, marking);
  const int f[] = {c.eta0};
  c.G = collapse_marked(c.Gp, f);
  c.l0 = c.H0.front();
  c.l1 = c.H1.front();
  return c;
}

EdgePath Case2Complex::u_prime(int k) const {
  const int p = params.ranks[0];
  Word u = u_k(params.n, params.m(), k);
  EdgePath out{v1, {}};
  auto in0 = [p](Letter l) { return l.index() <= p; };
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].sign() < 0) violated("u_k is not positive");
    if (i == 0 && in0(u[i])) out.edges.push_back(DirEdge::backward(eta0));
    if (i > 0 && in0(u[i - 1]) != in0(u[i]))
      out.edges.push_back(in0(u[i - 1]) ? DirEdge::forward(eta0) : DirEdge::backward(eta0));
    out.edges.push_back(DirEdge::forward(u[i].index() - 1));
  }
  if (!u.empty() && in0(u.back())) out.edges.push_back(DirEdge::forward(eta0));
  if (out != reduced(Gp.expand(u))) violated("u'_k disagrees with the reduced expansion of u_k");
  return out;
}

EdgePath Case2Complex::sigma_prime() const {
  return EdgePath{v1,
                  {DirEdge::forward(l1), DirEdge::backward(eta0), DirEdge::forward(l0), DirEdge::forward(eta0),
                   DirEdge::backward(l1)}};
}

EdgePath Case2Complex::gamma_prime(int k) const {
  const Graph& g = Gp.graph();
  EdgePath u = u_prime(k), s = sigma_prime(), ui = u.inverse(g);
  std::vector<DirEdge> raw{DirEdge::forward(H2.front()), DirEdge::forward(eta1)};
  for (const auto* part : {&u, &s, &ui}) raw.insert(raw.end(), part->edges.begin(), part->edges.end());
  raw.push_back(DirEdge::backward(eta1));
  EdgePath out{v2, raw};
  if (!out.reduced() || raw.front() == raw.back().reverse()) violated("cancellation in Phi'_k(gamma')");
  return out;
}

long long Case2Complex::eta0_count(const EdgePath& path) const {
  long long c = 0;
  for (DirEdge d : path.edges) c += d.edge() == eta0;
  return c;
}

namespace {

std::vector<Word> letters(int n, int from, int to) {
  std::vector<Word> out;
  for (int i = from; i <= to; ++i) out.push_back(Word::generator(n, i));
  return out;
}

}  // namespace

FreeFactorSystem witness_system(const WitnessParams& params) {
  params.validate();
  const int n = params.n;
  FreeFactorSystem F{n, {}};
  if (params.kind == WitnessParams::Case::connected) {
    F.components.push_back(letters(n, 1, params.r));
    return F;
  }
  int at = 1;
  for (int x : params.ranks) {
    F.components.push_back(letters(n, at, at + x - 1));
    at += x;
  }
  return F;
}

std::vector<Word> witness_B(const WitnessParams& params) { return letters(params.n, 1, params.m()); }

std::vector<NielsenMove> phi0_word(const WitnessParams& params) {
  params.validate();
  const int n = params.n;
  if (params.kind == WitnessParams::Case::connected) return {mv(K::right, n, 1, 1)};
  std::vector<NielsenMove> w;
  for (int t = params.m() + 1; t <= n; ++t) {
    w.push_back(mv(K::right, t, 1, 1));
    w.push_back(mv(K::left, t, 1, -1));
  }
  return w;
}

Automorphism phi_k_factored(const WitnessParams& params, int k) {
  const int n = params.n, m = params.m();
  Automorphism t = theta(n, m), ti = theta_inverse(n, m);
  Automorphism tk = Automorphism::identity(n), tik = Automorphism::identity(n);
  for (int i = 0; i < k; ++i) {
    tk = compose(tk, t);
    tik = compose(tik, ti);
  }
  return compose(tk, compose(product(n, phi0_word(params)), tik));
}

Automorphism phi_k(const WitnessParams& params, int k) {
  params.validate();
  const int n = params.n, m = params.m();
  Word u = u_k(n, m, k);
  std::vector<Word> im;
  for (int i = 1; i <= n; ++i) {
    Word a = Word::generator(n, i);
    if (params.kind == WitnessParams::Case::connected)
      im.push_back(i == n ? a * u : a);
    else
      im.push_back(i > m ? u.inverse() * a * u : a);
  }
  Automorphism direct{Endomorphism(n, im)};
  if (direct != phi_k_factored(params, k)) violated("phi_k differs from theta^k phi_0 theta^-k");
  return direct;
}

long long nielsen_upper_bound(const WitnessParams& params, int k, NielsenSet set) {
  long long lt = static_cast<long long>(theta_word(params.n, params.m(), set).size());
  long long l0 = static_cast<long long>(phi0_word(params).size());
  return 2LL * k * lt + l0;
}

WitnessSetup witness_setup(const WitnessParams& params) {
  params.validate();
  const int n = params.n;
  WitnessSetup s;
  s.B = witness_B(params);
  if (params.kind == WitnessParams::Case::connected) {
    s.G0 = MarkedGraph::rose(n);
    s.A = witness_system(params);
    s.c0 = Word::generator(n, n);
    return s;
  }
  Case2Complex c = case2_build(params);
  s.G0 = c.Gp;
  auto F = witness_system(params);
  s.A = FreeFactorSystem{n, {F.components[0], F.components[1]}};
  const int m = params.m(), p = params.ranks[0];
  // gamma' read at v'_1: a_{m+1} * sigma'
  s.c0 = Word(n, {m + 1, p + 1, 1, -(p + 1)});
  return s;
}

Word witness_class(const WitnessParams& params, int k) {
  return phi_k(params, k).apply(witness_setup(params).c0);
}

std::string DistortionReport::csv() const {
  std::ostringstream os;
  os << "k,upper_nielsen,i_k,spine_lb\n";
  for (const auto& r : rows) os << r.k << ',' << r.upper_nielsen << ',' << r.i_k << ',' << r.spine_lb << '\n';
  return os.str();
}

int DistortionReport::crossover() const {
  int k_star = -1;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (it->spine_lb < it->upper_nielsen) break;
    k_star = it->k;
  }
  return k_star;
}

DistortionReport distortion_report(const WitnessParams& params, int k_max, NielsenSet set) {
  require(k_max >= 0, "kmax must be >= 0");
  WitnessSetup s = witness_setup(params);
  CountingContext ctx = build_context(s.A, s.B, s.G0);
  DistortionReport rep;
  rep.params = params;
  rep.set = set;
  rep.i_0 = count_i(ctx, CyclicWord::of(s.c0)).value;
  for (int k = 0; k <= k_max; ++k) {
    ReportRow r;
    r.k = k;
    r.upper_nielsen = nielsen_upper_bound(params, k, set);
    r.i_k = count_i(ctx, CyclicWord::of(phi_k(params, k).apply(s.c0))).value;
    long long d = r.i_k > rep.i_0 ? r.i_k - rep.i_0 : rep.i_0 - r.i_k;
    r.spine_lb = (d + 1) / 2;
    rep.rows.push_back(r);
  }
  return rep;
}

}  // namespace outspace
