#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "outspace/covers.hpp"
#include "outspace/error.hpp"

using namespace outspace;

namespace {

std::vector<Word> gens(int n, const char* s) { return parse_word_list(n, s); }

}  // namespace

TEST_CASE("stallings cores") {
  MarkedGraph R3 = MarkedGraph::rose(3);
  auto K = stallings_core(gens(3, "a1, a2"), R3);
  CHECK(K.graph.num_vertices() == 1);
  CHECK(K.graph.num_edges() == 2);
  K = stallings_core(gens(2, "a1 a2"), MarkedGraph::rose(2));
  CHECK(K.graph.num_vertices() == 2);
  CHECK(K.graph.num_edges() == 2);
  CHECK(K.rank() == 1);
  K = stallings_core(gens(2, "a1"), MarkedGraph::rose(2), true);
  CHECK(K.graph.num_edges() == 1);
  CHECK(K.tail.empty());
  K = stallings_core(gens(3, "a2 a1 a2^-1, a2 a3 a2^-1"), R3, true);
  CHECK(K.graph.num_edges() == 2);
  CHECK(K.tail == std::vector<DirEdge>{DirEdge::forward(1)});
  REQUIRE(K.loops.size() == 2);
  CHECK(K.loops[0].edges.size() == 1);
  CHECK(K.label_of(K.loops[0].edges[0]) == DirEdge::forward(0));
  CHECK_THROWS_AS(stallings_core(gens(2, "1"), MarkedGraph::rose(2)), Error);
}

TEST_CASE("core of the full basis is the graph itself") {
  std::mt19937_64 rng(3);
  MarkedGraph T = theta_marked();
  for (int t = 0; t < 10; ++t) {
    std::vector<NielsenMove> ms;
    for (int s = 0; s < 3; ++s) ms.push_back({NielsenMove::Kind(rng() % 3), 1 + int(rng() % 2), 0, 1});
    for (auto& m : ms) m.j = 3 - m.i;
    MarkedGraph X = act(T, product(2, ms));
    auto K = stallings_core(gens(2, "a1, a2"), X);
    SubgroupGraph whole = induced_subgraph(X.graph(), std::vector<int>{0, 1, 2});
    CHECK(labeled_isomorphism(K, whole));
  }
  auto K = stallings_core(gens(2, "a1 a2, a2"), MarkedGraph::rose(2));
  CHECK(K.graph.num_edges() == 2);
}

TEST_CASE("subgroup conjugacy") {
  MarkedGraph R = MarkedGraph::rose(2);
  CHECK(subgroups_conjugate(stallings_core(gens(2, "a1"), R), stallings_core(gens(2, "a2 a1 a2^-1"), R)));
  CHECK_FALSE(subgroups_conjugate(stallings_core(gens(2, "a1"), R), stallings_core(gens(2, "a2"), R)));
  CHECK(subgroups_conjugate(stallings_core(gens(2, "a1 a1, a2"), R),
                            stallings_core(gens(2, "a2^-1 a1^-1 a1 a1 a1 a2, a2^-1 a1^-1 a2 a1 a2"), R)));
}

TEST_CASE("coindex") {
  CHECK(coindex(FreeFactorSystem::parse(3, "a1, a2")) == 1);
  CHECK(coindex(FreeFactorSystem::parse(4, "a1, a2, a3")) == 1);
  CHECK(coindex(FreeFactorSystem::parse(3, "a1")) == 2);
  CHECK(coindex(FreeFactorSystem::parse(3, "a1, a2, a3")) == 0);
  CHECK(coindex(FreeFactorSystem::parse(3, "a1 | a2, a3")) == 1);
}

TEST_CASE("free factor system order") {
  auto F = FreeFactorSystem::parse(3, "a1");
  CHECK(ffs_partial_order(F, F));
  CHECK(ffs_partial_order(F, FreeFactorSystem::parse(3, "a1, a2")));
  CHECK_FALSE(ffs_partial_order(F, FreeFactorSystem::parse(3, "a2, a3")));
  // brute force: no conjugate of a1 by |g| <= 6 is a word in a2, a3 only
  bool found = false;
  std::vector<std::vector<Letter>> layer{{}};
  for (int L = 0; L <= 6 && !found; ++L) {
    std::vector<std::vector<Letter>> next;
    for (auto& ls : layer) {
      Word g(3, std::span<const Letter>(ls));
      Word c = g * Word::generator(3, 1) * g.inverse();
      bool only = std::all_of(c.letters().begin(), c.letters().end(), [](Letter l) { return l.index() != 1; });
      found = found || only;
      for (int i = 1; i <= 3; ++i)
        for (int s : {1, -1})
          if (ls.empty() || ls.back() != Letter(i, -s)) {
            auto e = ls;
            e.emplace_back(i, s);
            next.push_back(e);
          }
    }
    layer = std::move(next);
  }
  CHECK_FALSE(found);
}

TEST_CASE("realizes") {
  MarkedGraph R3 = MarkedGraph::rose(3);
  auto w = realizes(R3, FreeFactorSystem::parse(3, "a1"));
  REQUIRE(w);
  CHECK(w->edges == std::vector<int>{0});
  CHECK(realizes(act(R3, A(3, "a1; a2; a3 a1 a2")), FreeFactorSystem::parse(3, "a1")));
  CHECK_FALSE(realizes(R3, FreeFactorSystem::parse(3, "a1 a1")));
  CHECK_FALSE(realizes(act(R3, A(3, "a1 a3; a2; a3")), FreeFactorSystem::parse(3, "a1, a2")));
  // petals of a rose share their vertex, so two of them never form a disjoint pair
  CHECK_FALSE(realizes(R3, FreeFactorSystem::parse(3, "a1 | a2")));
  auto bar = parse_marked(
      "graph { v: p q; e: e1 p p; e2 q q; e3 p q; e4 q q; basepoint: p; }"
      "marking { a1 = e1; a2 = e3 e2 e3^-1; a3 = e3 e4 e3^-1; }");
  w = realizes(bar, FreeFactorSystem::parse(3, "a1 | a2, a3"));
  REQUIRE(w);
  CHECK(w->components[0] == std::vector<int>{0});
  CHECK(w->components[1] == std::vector<int>{1, 3});
}

TEST_CASE("collapse commutes with cores") {
  MarkedGraph T = theta_marked();
  const int e1[] = {0};
  CHECK(minimal_subtree_collapse_check(T, {}, gens(2, "a1")));
  CHECK(minimal_subtree_collapse_check(T, e1, gens(2, "a1")));
  std::mt19937_64 rng(17);
  MarkedGraph R3 = MarkedGraph::rose(3);
  auto blow = enumerate_blowups(R3.graph());
  for (int t = 0; t < 40; ++t) {
    MarkedGraph G = lift_blowup(R3, blow[rng() % blow.size()]);
    auto forests = enumerate_natural_subforests(G.graph(), false);
    std::vector<Word> B{random_word(rng, 3, 4), random_word(rng, 3, 3)};
    if (B[0].empty() && B[1].empty()) continue;
    CHECK(minimal_subtree_collapse_check(G, forests[rng() % forests.size()], B));
  }
}

TEST_CASE("coindex is monotone on realized systems") {
  // systems carried by core subgraphs of a few rank-3 marked graphs
  MarkedGraph R3 = MarkedGraph::rose(3);
  std::vector<MarkedGraph> Gs{R3, act(R3, A(3, "a1 a2; a2; a3 a1"))};
  for (const auto& b : enumerate_blowups(R3.graph())) Gs.push_back(lift_blowup(R3, b));
  Gs.resize(6);
  std::vector<FreeFactorSystem> systems;
  for (const auto& G : Gs) {
    const Graph& g = G.graph();
    for (std::uint32_t mask = 1; mask < (1u << g.num_edges()); ++mask) {
      std::vector<int> es;
      std::vector<int> val(g.num_vertices(), 0);
      for (int e = 0; e < g.num_edges(); ++e)
        if (mask >> e & 1) {
          es.push_back(e);
          ++val[g.origin(e)];
          ++val[g.terminus(e)];
        }
      if (std::count(val.begin(), val.end(), 1)) continue;
      SubgroupGraph h = induced_subgraph(g, es);
      if (!h.graph.connected()) continue;  // single-component systems keep the test fast
      systems.push_back(system_of(G, {es}));
    }
  }
  int comparable = 0;
  for (const auto& F : systems)
    for (const auto& Fp : systems) {
      if (!ffs_partial_order(F, Fp)) continue;
      ++comparable;
      CHECK(coindex(Fp) <= coindex(F));
      CHECK((coindex(Fp) == coindex(F)) == ffs_equal(F, Fp));
    }
  CHECK(comparable > 100);
}
