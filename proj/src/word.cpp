#include "outspace/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "outspace/error.hpp"

namespace outspace {

namespace {

void check_letter(int rank, Letter l) {
  if (l.value == 0 || l.index() > rank)
    fail("letter index " + std::to_string(l.index()) + " out of range for rank " + std::to_string(rank));
}

}  // namespace

void WordBuilder::push(Letter l) {
  check_letter(rank_, l);
  if (!acc_.empty() && acc_.back() == l.inverse()) {
    acc_.pop_back();
    ++cancellations_;
  } else {
    acc_.push_back(l);
  }
}

void WordBuilder::append(const Word& w) {
  for (Letter l : w.letters()) push(l);
}

void WordBuilder::append_inverse(const Word& w) {
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) push(it->inverse());
}

Word WordBuilder::finish() && { return Word(rank_, std::span<const Letter>(acc_)); }

Word::Word(int rank, std::span<const Letter> raw) : rank_(rank) {
  letters_.reserve(raw.size());
  for (Letter l : raw) {
    check_letter(rank, l);
    if (!letters_.empty() && letters_.back() == l.inverse())
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

Word::Word(int rank, std::initializer_list<int> raw) : rank_(rank) {
  for (int v : raw) {
    Letter l(v);
    check_letter(rank, l);
    if (!letters_.empty() && letters_.back() == l.inverse())
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

Word Word::generator(int rank, int index, int sign) { return Word(rank, {sign < 0 ? -index : index}); }

Word reduce(int rank, std::span<const Letter> raw) { return Word(rank, raw); }

Word Word::inverse() const {
  Word w(rank_);
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
  return w;
}

Word Word::operator*(const Word& rhs) const {
  int r = std::max(rank_, rhs.rank_);
  std::size_t cut = 0;
  while (cut < letters_.size() && cut < rhs.letters_.size() &&
         letters_[letters_.size() - 1 - cut] == rhs.letters_[cut].inverse())
    ++cut;
  Word w(r);
  w.letters_.reserve(letters_.size() + rhs.letters_.size() - 2 * cut);
  w.letters_.insert(w.letters_.end(), letters_.begin(), letters_.end() - cut);
  w.letters_.insert(w.letters_.end(), rhs.letters_.begin() + cut, rhs.letters_.end());
  return w;
}

Word Word::power(long long e) const {
  Word base = e < 0 ? inverse() : *this;
  Word out(rank_);
  for (long long i = 0; i < (e < 0 ? -e : e); ++i) out = out * base;
  return out;
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  Word w(rank_);
  w.letters_.assign(letters_.begin() + pos, letters_.begin() + pos + len);
  return w;
}

bool operator<(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].key() != b[i].key()) return a[i].key() < b[i].key();
  return false;
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += ' ';
    s += 'a';
    s += std::to_string(letters_[i].index());
    if (letters_[i].sign() < 0) s += "^-1";
  }
  return s;
}

std::size_t least_rotation(std::span<const Letter> s) {
  // Booth's failure-function algorithm on the doubled string.
  const long n = static_cast<long>(s.size());
  if (n == 0) return 0;
  std::vector<long> f(2 * n, -1);
  long k = 0;
  auto at = [&](long i) { return s[i % n].key(); };
  for (long j = 1; j < 2 * n; ++j) {
    int sj = at(j);
    long i = f[j - k - 1];
    while (i != -1 && sj != at(k + i + 1)) {
      if (sj < at(k + i + 1)) k = j - i - 1;
      i = f[i];
    }
    if (sj != at(k + i + 1)) {
      if (sj < at(k)) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return static_cast<std::size_t>(k % n);
}

std::pair<Word, Word> strip_conjugation(const Word& w) {
  const auto& ls = w.letters();
  std::size_t i = 0, j = ls.size();
  while (j - i >= 2 && ls[i] == ls[j - 1].inverse()) {
    ++i;
    --j;
  }
  return {w.subword(0, i), w.subword(i, j - i)};
}

CyclicWord CyclicWord::from_cyclically_reduced(const Word& w) {
  require(!w.empty(), "cyclic word of the trivial element");
  require(w.size() == 1 || w.front() != w.back().inverse(), "word is not cyclically reduced");
  std::size_t r = least_rotation(w.letters());
  CyclicWord c;
  std::vector<Letter> rot(w.letters().begin() + r, w.letters().end());
  rot.insert(rot.end(), w.letters().begin(), w.letters().begin() + r);
  c.word_ = Word(w.rank(), std::span<const Letter>(rot));
  return c;
}

CyclicWord CyclicWord::of(const Word& w) { return cyclic_reduce(w).cyclic; }

CyclicReduction cyclic_reduce(const Word& w) {
  require(!w.empty(), "cyclic_reduce: trivial word");
  auto [c, core] = strip_conjugation(w);
  std::size_t r = least_rotation(core.letters());
  // core = p q, canonical = q p, w = (c p) (q p) (c p)^-1
  Word p = core.subword(0, r);
  CyclicReduction out{CyclicWord::from_cyclically_reduced(core), c * p};
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<Letter> parse_letters(std::string_view text, int& max_index) {
  std::vector<Letter> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  max_index = 0;
  while (in >> tok) {
    if (tok == "1") continue;
    int sign = 1;
    auto caret = tok.find('^');
    std::string head = tok.substr(0, caret);
    if (caret != std::string::npos) {
      std::string ex = tok.substr(caret + 1);
      if (ex == "-1")
        sign = -1;
      else if (ex != "1")
        fail("bad exponent in letter '" + tok + "'");
    }
    if (head.size() < 2 || head[0] != 'a' ||
        !std::all_of(head.begin() + 1, head.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      fail("bad letter '" + tok + "'");
    int idx = std::stoi(head.substr(1));
    if (idx <= 0) fail("bad letter '" + tok + "'");
    max_index = std::max(max_index, idx);
    out.emplace_back(idx, sign);
  }
  return out;
}

}  // namespace

Word parse_word(int rank, std::string_view text) {
  text = trim(text);
  if (text == "\"\"" || text == "ε") return Word(rank);
  int mx = 0;
  auto ls = parse_letters(text, mx);
  if (rank <= 0) rank = mx;
  return Word(rank, std::span<const Letter>(ls));
}

int max_letter_index(std::string_view text) {
  int mx = 0;
  for (std::size_t pos = 0; pos <= text.size();) {
    auto next = text.find_first_of(",|;", pos);
    std::string_view part = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    int m = 0;
    parse_letters(part, m);
    mx = std::max(mx, m);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return mx;
}

std::vector<Word> parse_word_list(int rank, std::string_view text) {
  std::vector<Word> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(',', pos);
    auto part = trim(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (!part.empty()) out.push_back(parse_word(rank, part));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(l.value + 0x9e37);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace outspace
