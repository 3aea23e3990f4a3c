#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "outspace/error.hpp"

using namespace outspace;

namespace {

std::vector<DirEdge> canon(std::vector<DirEdge> c) { return canonical_rotation(c); }

Automorphism random_nielsen(std::mt19937_64& rng, int n, int len) {
  std::uniform_int_distribution<int> kind(0, 2), idx(1, n), sg(0, 1);
  std::vector<NielsenMove> ms;
  for (int s = 0; s < len; ++s) {
    NielsenMove m;
    m.kind = static_cast<NielsenMove::Kind>(kind(rng));
    m.i = idx(rng);
    do m.j = idx(rng);
    while (m.j == m.i);
    m.sign = sg(rng) ? 1 : -1;
    ms.push_back(m);
  }
  return product(n, ms);
}

}  // namespace

TEST_CASE("act") {
  MarkedGraph R = MarkedGraph::rose(3);
  MarkedGraph G = act(R, A(3, "a1; a2; a3 a1 a2"));
  CHECK(G.marking(3).str(G.graph()) == "e3 e1 e2");
  CHECK(G.marking(1).str(G.graph()) == "e1");
  CHECK(act(R, Automorphism::identity(3)).marking() == R.marking());
  std::mt19937_64 rng(1);
  MarkedGraph T = theta_marked();
  for (int t = 0; t < 20; ++t) {
    Automorphism f = random_nielsen(rng, 2, 3), g = random_nielsen(rng, 2, 3);
    CHECK(act(act(T, f), g).marking() == act(T, compose(f, g)).marking());
  }
  CHECK_THROWS_AS(act(R, Automorphism::identity(2)), Error);
}

TEST_CASE("circuits") {
  MarkedGraph R = MarkedGraph::rose(3);
  CHECK(circuit_of(R, CyclicWord::of(W(3, "a3"))) == std::vector<DirEdge>{DirEdge::forward(2)});
  auto c = circuit_of(R, W(3, "a3 a1 a2"));
  CHECK(canon(c) == canon({DirEdge::forward(2), DirEdge::forward(0), DirEdge::forward(1)}));
  MarkedGraph T = theta_marked();
  c = circuit_of(T, W(2, "a1"));
  CHECK(c.size() == 2);
  CHECK(canon(c) == canon({DirEdge::forward(0), DirEdge::backward(1)}));
  // conjugate representatives give the same circuit
  CHECK(canon(circuit_of(T, W(2, "a2 a1 a2^-1"))) == canon(c));
  CHECK_THROWS_AS(circuit_of(T, Word(2)), Error);
}

TEST_CASE("equivalence") {
  MarkedGraph R = MarkedGraph::rose(2);
  auto w = equivalent(R, R);
  REQUIRE(w);
  CHECK(w->conjugator.empty());
  MarkedGraph swap = act(R, A(2, "a2; a1"));
  CHECK(equivalent(R, swap));
  CHECK_FALSE(equivalent(R, act(R, A(2, "a1 a2; a2"))));
  // collapse of theta along e1 is the rose with inverted petals
  MarkedGraph T = theta_marked();
  const int e1[] = {0};
  MarkedGraph C = collapse_marked(T, e1);
  CHECK(C.graph().num_vertices() == 1);
  CHECK(equivalent(C, act(R, A(2, "a1^-1; a2^-1"))));
  CHECK(equivalent(C, R));  // inversions are rose symmetries
}

TEST_CASE("rose symmetries are exactly signed permutations mod inner") {
  MarkedGraph R = MarkedGraph::rose(3);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    std::vector<int> perm{1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Word> im;
    for (int i = 0; i < 3; ++i) im.push_back(Word::generator(3, perm[i], rng() % 2 ? 1 : -1));
    Word g = random_word(rng, 3, 3);
    for (auto& x : im) x = g * x * g.inverse();
    CHECK(equivalent(R, act(R, Automorphism(Endomorphism(3, im)))));
  }
  int hits = 0;
  for (int t = 0; t < 30; ++t) {
    Automorphism f = random_nielsen(rng, 3, 4);
    bool signed_perm = true;
    for (const Word& w : f.map().images()) {
      auto r = cyclic_reduce(w);
      signed_perm = signed_perm && r.cyclic.size() == 1;
    }
    bool eq = equivalent(R, act(R, f)).has_value();
    if (!signed_perm) CHECK_FALSE(eq);
    hits += eq;
  }
  CHECK(hits < 30);
}

TEST_CASE("equivalence is an equivalence relation on samples") {
  std::mt19937_64 rng(9);
  MarkedGraph T = theta_marked();
  for (int t = 0; t < 15; ++t) {
    Automorphism f = random_nielsen(rng, 2, 2);
    MarkedGraph X = act(T, f);
    // a relabeled copy of X: reverse one edge's orientation and rename
    Graph g;
    g.add_vertex("p");
    g.add_vertex("q");
    g.add_edge(1, 0, "x");
    g.add_edge(0, 1, "y");
    g.add_edge(0, 1, "z");
    std::vector<EdgePath> m;
    for (const auto& p : X.marking()) {
      EdgePath q{0, {}};
      for (DirEdge d : p.edges) q.edges.push_back(d.edge() == 0 ? d.reverse() : d);
      m.push_back(q);
    }
    MarkedGraph Y(g, 0, m);
    CHECK(equivalent(X, Y));
    CHECK(equivalent(Y, X));
    CHECK(invariant_key(X) == invariant_key(Y));
  }
}

TEST_CASE("normalize and blow-up lifts") {
  auto G = parse_marked(
      "graph { v: v0 v1 v2; e: e1 v0 v2; e2 v2 v1; e3 v0 v1; e4 v0 v1; basepoint: v2; }"
      "marking { a1 = e2 e3^-1 e1; a2 = e2 e4^-1 e1; }");
  MarkedGraph N = G.normalized();
  CHECK(N.is_natural());
  CHECK(N.graph().num_edges() == 3);
  MarkedGraph R = MarkedGraph::rose(3);
  for (const auto& b : enumerate_blowups(R.graph())) {
    MarkedGraph L = lift_blowup(R, b);
    const int f[] = {b.new_edge};
    MarkedGraph back = collapse_marked(L, f);
    CHECK(back.marking() == R.marking());
    CHECK(equivalent(back, R));
  }
}

TEST_CASE("marked graph text round trip") {
  MarkedGraph T = theta_marked();
  std::string s = format_marked(T);
  MarkedGraph U = parse_marked(s);
  CHECK(format_marked(U) == s);
  CHECK_THROWS_AS(parse_marked("graph { v: v0; e: e1 v0 v0; e2 v0 v0; } marking { a1 = e1; a2 = e1; }"), Error);
}
