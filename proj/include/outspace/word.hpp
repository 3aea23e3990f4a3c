#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace outspace {

// A signed basis letter: +i is a_i, -i is a_i^-1.
struct Letter {
  std::int32_t value = 0;

  constexpr Letter() = default;
  constexpr explicit Letter(std::int32_t v) : value(v) {}
  constexpr Letter(std::int32_t index, int sign) : value(sign < 0 ? -index : index) {}

  constexpr int index() const { return value < 0 ? -value : value; }
  constexpr int sign() const { return value < 0 ? -1 : 1; }
  constexpr Letter inverse() const { return Letter(-value); }
  // total order used for canonical rotations: a1 < a1^-1 < a2 < ...
  constexpr int key() const { return 2 * (index() - 1) + (value < 0 ? 1 : 0); }

  friend constexpr bool operator==(Letter, Letter) = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(rank) {}
  // reduces `raw`; throws if a letter is out of range
  Word(int rank, std::span<const Letter> raw);
  Word(int rank, std::initializer_list<int> raw);

  static Word generator(int rank, int index, int sign = 1);

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  Word operator*(const Word& rhs) const;
  Word power(long long e) const;
  Word subword(std::size_t pos, std::size_t len) const;

  std::string str() const;

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend bool operator<(const Word& a, const Word& b);

 private:
  int rank_ = 0;
  std::vector<Letter> letters_;
};

// Incremental free reduction; push is amortized O(1).
class WordBuilder {
 public:
  explicit WordBuilder(int rank) : rank_(rank) {}
  void push(Letter l);
  void append(const Word& w);
  void append_inverse(const Word& w);
  std::size_t cancellations() const { return cancellations_; }
  Word finish() &&;

 private:
  int rank_;
  std::vector<Letter> acc_;
  std::size_t cancellations_ = 0;
};

Word reduce(int rank, std::span<const Letter> raw);

class CyclicWord {
 public:
  CyclicWord() = default;
  // w must be cyclically reduced and nontrivial; stored rotated canonically
  static CyclicWord from_cyclically_reduced(const Word& w);
  // any nontrivial word
  static CyclicWord of(const Word& w);

  int rank() const { return word_.rank(); }
  std::size_t size() const { return word_.size(); }
  const Word& word() const { return word_; }
  std::string str() const { return word_.str(); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend bool operator<(const CyclicWord& a, const CyclicWord& b) { return a.word_ < b.word_; }

 private:
  Word word_;
};

struct CyclicReduction {
  CyclicWord cyclic;
  Word conjugator;  // w = conjugator * cyclic * conjugator^-1
};

CyclicReduction cyclic_reduce(const Word& w);

// Strip conjugating ends only: w = c * core * c^-1 with core cyclically reduced (not rotated).
std::pair<Word, Word> strip_conjugation(const Word& w);

// Index of the lexicographically least rotation (Booth).
std::size_t least_rotation(std::span<const Letter> s);

Word parse_word(int rank, std::string_view text);
std::vector<Word> parse_word_list(int rank, std::string_view text);  // comma separated
// Infers the rank from the largest index if rank <= 0.
int max_letter_index(std::string_view text);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace outspace
