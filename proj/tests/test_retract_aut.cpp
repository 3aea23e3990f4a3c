#include "doctest.h"
#include "helpers.hpp"
#include "outspace/error.hpp"
#include "outspace/retract_aut.hpp"
#include "outspace/sampling.hpp"

using namespace outspace;

TEST_CASE("embed and retract on roses") {
  auto R2 = PointedMarkedGraph::rose(2);
  auto R3 = embed_j(R2);
  CHECK(pointed_equivalent(R3, PointedMarkedGraph::rose(3)));
  CHECK(pointed_equivalent(retract_r(R3), R2));
  CHECK_THROWS_AS(retract_r(PointedMarkedGraph::rose(1)), Error);
  // theta graph with a loop
  auto th = PointedMarkedGraph(theta_marked());
  auto j = embed_j(th);
  CHECK(j.rank() == 3);
  CHECK(j.graph().num_edges() == 4);
  CHECK(pointed_equivalent(retract_r(j), th));
}

TEST_CASE("retract by hand") {
  // a3 -> e3 e1: the a1,a2 core is the subrose
  auto x = PointedMarkedGraph(act(MarkedGraph::rose(3), A(3, "a1; a2; a3 a1")));
  CHECK(pointed_equivalent(retract_r(x), PointedMarkedGraph::rose(2)));
  // a1 -> e3 e1 e3^-1, a2 -> e3 e2 e3^-1: the lifted core hangs off a tail e3
  auto y = PointedMarkedGraph(act(MarkedGraph::rose(3), A(3, "a3 a1 a3^-1; a3 a2 a3^-1; a3")));
  auto ry = retract_r_full(y);
  CHECK(ry.core.tail.size() == 1);
  CHECK(ry.core.loops[0].edges.size() == 1);
  CHECK(pointed_equivalent(ry.result, PointedMarkedGraph::rose(2)));
  // pulling the basepoint off the core produces a tail
  auto z = base_on_edge(MarkedGraph::rose(3), 2);
  auto rz = retract_r_full(z);
  CHECK(rz.core.tail.size() == 1);
  CHECK(pointed_equivalent(rz.result, PointedMarkedGraph::rose(2)));
}

TEST_CASE("r o j = id on samples") {
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    int n = 1 + t % 3;
    auto w = random_pointed(rng, n, 4);
    CHECK(pointed_equivalent(retract_r(embed_j(w)), w));
  }
}

TEST_CASE("pointed equivalence is not free equivalence") {
  auto x = PointedMarkedGraph::rose(2);
  auto y = act_pointed(x, A(2, "a2 a1 a2^-1; a2"));
  auto z = act_pointed(x, A(2, "a2 a1 a2^-1; a2 a2 a2^-1"));
  CHECK_FALSE(pointed_equivalent(x, y));
  CHECK(equivalent(x.marked(), y.marked()));
  CHECK(pointed_equivalent(y, z));
}

TEST_CASE("retraction is equivariant for Aut(F_{n-1})") {
  Rng rng(9);
  for (int t = 0; t < 40; ++t) {
    int n = 3;
    auto x = random_pointed(rng, n, 3);
    auto w = random_nielsen_word(rng, n - 1, 3);
    std::vector<Word> im;
    Automorphism small = product(n - 1, w);
    for (int i = 1; i < n; ++i) {
      Word s = small.apply(Word::generator(n - 1, i));
      im.push_back(Word(n, std::span<const Letter>(s.letters())));
    }
    im.push_back(Word::generator(n, n));
    Automorphism big{Endomorphism(n, im)};
    CHECK(pointed_equivalent(retract_r(act_pointed(x, big)), act_pointed(retract_r(x), small)));
  }
}

TEST_CASE("lipschitz audit") {
  auto R3 = PointedMarkedGraph::rose(3);
  auto th = embed_j(PointedMarkedGraph(theta_marked()));
  // a forest inside the embedded subgraph
  const int f[] = {0};
  CHECK(lipschitz_audit(th, f).distance == 1);
  Rng rng(3);
  std::vector<AuditCase> cases;
  for (int t = 0; t < 80; ++t) {
    auto x = random_pointed(rng, 2 + t % 3, 4);
    auto forest = random_forest(rng, x.graph());
    if (forest.empty()) continue;
    cases.push_back({x, forest});
  }
  auto d = audit_batch(cases);
  CHECK(d == audit_batch_serial(cases));
  for (int v : d) CHECK((v == 0 || v == 1));
}
