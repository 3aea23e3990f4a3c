#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "outspace/error.hpp"

using namespace outspace;

TEST_CASE("reduce") {
  CHECK(W(3, "a1 a1^-1").empty());
  CHECK(W(3, "a1 a2 a2^-1 a3") == W(3, "a1 a3"));
  CHECK(W(3, "a1 a2 a1").str() == "a1 a2 a1");
  CHECK_THROWS_AS(W(2, "a3"), Error);
  CHECK(W(2, "1").empty());
  CHECK(W(2, "").empty());
}

TEST_CASE("reduce properties on random words") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    Word w = random_word(rng, 3, 12);
    CHECK(Word(3, std::span<const Letter>(w.letters())) == w);
    CHECK((w * w.inverse()).empty());
  }
}

TEST_CASE("cyclic_reduce") {
  auto r = cyclic_reduce(W(3, "a1 a2 a1^-1"));
  CHECK(r.cyclic.word() == W(3, "a2"));
  CHECK(r.conjugator == W(3, "a1"));
  r = cyclic_reduce(W(3, "a3 a1 a2"));
  CHECK(r.cyclic.word() == W(3, "a1 a2 a3"));  // least rotation
  Word w = W(3, "a2^-1 a1 a2 a2");
  r = cyclic_reduce(w);
  CHECK(r.conjugator * r.cyclic.word() * r.conjugator.inverse() == w);
  // brute force: the canonical form is the least of all rotations of the cyclic core
  Word core = W(3, "a1 a2");
  Word best = core;
  for (std::size_t k = 0; k < core.size(); ++k) {
    Word rot = core.subword(k, core.size() - k) * core.subword(0, k);
    if (rot < best) best = rot;
  }
  CHECK(r.cyclic.word() == best);
  CHECK_THROWS_AS(cyclic_reduce(Word(3)), Error);
}

TEST_CASE("least rotation agrees with brute force") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    Word w = random_word(rng, 2, 1 + t % 9);
    if (w.empty()) continue;
    auto [c, core] = strip_conjugation(w);
    std::vector<Letter> ls = core.letters();
    std::vector<Letter> best = ls;
    auto key_less = [](const std::vector<Letter>& a, const std::vector<Letter>& b) {
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].key() != b[i].key()) return a[i].key() < b[i].key();
      return false;
    };
    for (std::size_t k = 0; k < ls.size(); ++k) {
      std::vector<Letter> rot(ls.begin() + k, ls.end());
      rot.insert(rot.end(), ls.begin(), ls.begin() + k);
      if (key_less(rot, best)) best = rot;
    }
    CHECK(CyclicWord::of(w).word().letters() == best);
  }
}

TEST_CASE("apply and compose") {
  Endomorphism theta = M(3, "a1 a2; a1; a3");
  CHECK(theta.apply(W(3, "a1")) == W(3, "a1 a2"));
  Word u = W(3, "a1");
  for (int k = 0; k < 3; ++k) u = theta.apply(u);
  CHECK(u == W(3, "a1 a2 a1 a1 a2"));
  Endomorphism psi = M(3, "a2; a2^-1 a1; a3");
  CHECK(compose(theta, psi) == Endomorphism::identity(3));
  CHECK(compose(Endomorphism::identity(3), theta) == theta);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<Word> fi, gi;
    for (int i = 0; i < 3; ++i) {
      fi.push_back(random_word(rng, 3, 3));
      gi.push_back(random_word(rng, 3, 3));
    }
    Endomorphism f(3, fi), g(3, gi);
    Word w = random_word(rng, 3, 6);
    CHECK(compose(f, g).apply(w) == f.apply(g.apply(w)));
  }
  CHECK_THROWS_AS(compose(Endomorphism::identity(2), theta), Error);
}

TEST_CASE("is_automorphism") {
  auto inv = is_automorphism(M(3, "a1 a2; a1; a3"));
  REQUIRE(inv);
  CHECK(*inv == M(3, "a2; a2^-1 a1; a3"));
  CHECK_FALSE(is_automorphism(M(3, "a1 a2; a1 a2; a3")));
  CHECK_FALSE(is_automorphism(M(2, "a1 a1; a2")));
  CHECK_FALSE(is_automorphism(M(2, "a1 a2 a1^-1; a1 a2^-1 a1^-1")));
  inv = is_automorphism(M(3, "a1; a2; a3 a1 a2"));
  REQUIRE(inv);
  CHECK(*inv == M(3, "a1; a2; a3 a2^-1 a1^-1"));
  // random Nielsen products are automorphisms with verified inverses
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> kind(0, 3), idx(1, 3), sg(0, 1);
  for (int t = 0; t < 100; ++t) {
    std::vector<NielsenMove> ms;
    for (int s = 0; s < 5; ++s) {
      NielsenMove m;
      m.kind = static_cast<NielsenMove::Kind>(kind(rng));
      m.i = idx(rng);
      do m.j = idx(rng);
      while (m.j == m.i);
      m.sign = sg(rng) ? 1 : -1;
      ms.push_back(m);
    }
    Automorphism a = product(3, ms);
    auto back = is_automorphism(a.map());
    REQUIRE(back);
    CHECK(compose(a.map(), *back) == Endomorphism::identity(3));
  }
}

TEST_CASE("simultaneous conjugator") {
  std::vector<Word> u{W(2, "a1 a2")}, v{W(2, "a2 a1")};
  auto g = simultaneous_conjugator(u, v);
  REQUIRE(g);
  CHECK(*g == W(2, "a1"));
  u = {W(2, "a1"), W(2, "a2")};
  g = simultaneous_conjugator(u, u);
  REQUIRE(g);
  CHECK(g->empty());
  v = {W(2, "a2"), W(2, "a1")};
  CHECK_FALSE(simultaneous_conjugator(u, v));
  CHECK_FALSE(simultaneous_conjugator_brute(u, v, 4));
  std::vector<Word> z{Word(2)};
  CHECK_THROWS_AS(simultaneous_conjugator(z, z), Error);
}

TEST_CASE("simultaneous conjugator agrees with brute force") {
  std::mt19937_64 rng(21);
  int solved = 0;
  for (int t = 0; t < 150; ++t) {
    std::vector<Word> u{random_word(rng, 2, 3), random_word(rng, 2, 2)};
    if (u[0].empty() && u[1].empty()) continue;
    std::vector<Word> v = u;
    if (t % 2 == 0) {
      Word h = random_word(rng, 2, 2);
      for (auto& x : v) x = h.inverse() * x * h;
    } else {
      v[1] = random_word(rng, 2, 2);
    }
    std::size_t total = 0;
    for (auto& x : u) total += x.size();
    for (auto& x : v) total += x.size();
    if (total > 10) continue;
    auto fast = simultaneous_conjugator(u, v);
    auto slow = simultaneous_conjugator_brute(u, v, static_cast<int>(total));
    CHECK(fast.has_value() == slow.has_value());
    if (fast && slow) {
      CHECK(fast->size() == slow->size());
      ++solved;
    }
  }
  CHECK(solved > 20);
}
