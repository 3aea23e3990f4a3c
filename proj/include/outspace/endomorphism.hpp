#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "outspace/word.hpp"

namespace outspace {

class Endomorphism {
 public:
  Endomorphism() = default;
  Endomorphism(int rank, std::vector<Word> images);
  static Endomorphism identity(int rank);

  int rank() const { return rank_; }
  const Word& image(int index) const { return images_[index - 1]; }  // 1-based
  const std::vector<Word>& images() const { return images_; }

  Word apply(const Word& w) const;
  // same, also counting letter cancellations made while concatenating images
  Word apply(const Word& w, std::size_t& cancellations) const;

  std::string str() const;
  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

 private:
  int rank_ = 0;
  std::vector<Word> images_;
};

// f after g: apply(compose(f,g), w) == f(g(w))
Endomorphism compose(const Endomorphism& f, const Endomorphism& g);

// Inverse if f is an automorphism (fold of the image loops is the rank-n rose).
std::optional<Endomorphism> is_automorphism(const Endomorphism& f);

class Automorphism {
 public:
  Automorphism() = default;
  static Automorphism identity(int rank);
  // throws if f is not invertible
  explicit Automorphism(const Endomorphism& f);
  static std::optional<Automorphism> verify(const Endomorphism& f);

  int rank() const { return map_.rank(); }
  const Endomorphism& map() const { return map_; }
  const Endomorphism& inverse_map() const { return inverse_; }
  Automorphism inverse() const;
  Word apply(const Word& w) const { return map_.apply(w); }
  std::string str() const { return map_.str(); }

  friend Automorphism compose(const Automorphism& f, const Automorphism& g);
  friend bool operator==(const Automorphism& a, const Automorphism& b) { return a.map_ == b.map_; }

 private:
  Automorphism(Endomorphism f, Endomorphism inv) : map_(std::move(f)), inverse_(std::move(inv)) {}
  Endomorphism map_;
  Endomorphism inverse_;
};

// g with g^-1 u_i g == v_i for all i, minimal |g| among solutions; nullopt if none.
std::optional<Word> simultaneous_conjugator(std::span<const Word> u, std::span<const Word> v);

// Exhaustive reference: all reduced g with |g| <= max_len.
std::optional<Word> simultaneous_conjugator_brute(std::span<const Word> u, std::span<const Word> v, int max_len);

// "a1 a2; a1; a3" or "a1 -> a1 a2; a2 -> a1; a3 -> a3"
Endomorphism parse_endomorphism(int rank, std::string_view text);

// Elementary Nielsen moves.
struct NielsenMove {
  enum class Kind { right, left, inversion, transposition };
  Kind kind = Kind::inversion;
  int i = 1, j = 1, sign = 1;  // right: a_i -> a_i a_j^s ; left: a_i -> a_j^s a_i ; transposition swaps a_i,a_j
  Automorphism to_automorphism(int rank) const;
  std::string str() const;
};

Automorphism product(int rank, std::span<const NielsenMove> word);  // moves[0] ∘ moves[1] ∘ ...

}  // namespace outspace
