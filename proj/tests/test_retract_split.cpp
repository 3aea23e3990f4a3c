#include "doctest.h"
#include "helpers.hpp"
#include "outspace/error.hpp"
#include "outspace/retract_split.hpp"
#include "outspace/sampling.hpp"
#include "outspace/spine.hpp"

using namespace outspace;

namespace {

SplittingBlueprint loop3() {
  return SplittingBlueprint::parse(
      "splitting { type: loop; vertex A = a1 a2; stable: a3; ray1: prefix \"\", period a3; ray2: prefix \"\", period "
      "a3^-1 }");
}

// random walk inside the subcomplex
MarkedGraph walk(Rng& rng, const MarkedGraph& start, int len, const SplittingBlueprint& bp) {
  MarkedGraph x = start;
  for (int s = 0; s < len; ++s) {
    std::vector<MarkedGraph> ok;
    for (auto& nb : neighbors(x))
      if (in_CVKT(nb.vertex, bp)) ok.push_back(std::move(nb.vertex));
    if (ok.empty()) break;
    x = pick(rng, ok);
  }
  return x;
}

}  // namespace

TEST_CASE("blueprint text") {
  auto bp = loop3();
  CHECK(bp.type == SplittingBlueprint::Type::loop);
  CHECK(bp.rank == 3);
  REQUIRE(bp.vertices.size() == 1);
  CHECK(bp.vertices[0] == std::vector<Word>{W(3, "a1"), W(3, "a2")});
  CHECK(bp.stable == W(3, "a3"));
  CHECK(bp.rays[1].period == W(3, "a3^-1"));
  auto again = SplittingBlueprint::parse(bp.str());
  CHECK(again.str() == bp.str());

  auto seg = SplittingBlueprint::parse("splitting { type: segment; vertex A0 = a1; vertex A1 = a2, a3 }");
  CHECK(seg.type == SplittingBlueprint::Type::segment);
  CHECK(seg.rays[0].period == W(3, "a2"));
  CHECK(seg.rays[1].period == W(3, "a1"));
  CHECK(SplittingBlueprint::parse(seg.str()).str() == seg.str());

  CHECK_THROWS_AS(SplittingBlueprint::parse("splitting { type: loop; vertex A = a1 a2; stable: a3 a3 }"), Error);
  CHECK_THROWS_AS(SplittingBlueprint::parse("splitting { type: loop; vertex A = a1; stable: a3 }"), Error);
}

TEST_CASE("coindex one systems") {
  auto a = coindex1_to_splitting(FreeFactorSystem::parse(3, "a1, a2"));
  CHECK(a.type == SplittingBlueprint::Type::loop);
  CHECK(a.stable == W(3, "a3"));
  auto b = coindex1_to_splitting(FreeFactorSystem::parse(3, "a1 | a2, a3"));
  CHECK(b.type == SplittingBlueprint::Type::segment);
  CHECK(ffs_equal(b.vertex_system(), FreeFactorSystem::parse(3, "a1 | a2, a3")));
  CHECK_THROWS_AS(coindex1_to_splitting(FreeFactorSystem::parse(3, "a1")), Error);
  // conjugated factors still give a splitting with the same system
  auto c = coindex1_to_splitting(FreeFactorSystem::parse(3, "a2 a1 a2^-1 | a2, a3"));
  CHECK(ffs_equal(c.vertex_system(), FreeFactorSystem::parse(3, "a2 a1 a2^-1 | a2, a3")));
}

TEST_CASE("membership") {
  auto bp = loop3();
  auto R3 = MarkedGraph::rose(3);
  auto w = in_CVKT(R3, bp);
  REQUIRE(w);
  CHECK(w->edge == 2);
  CHECK_FALSE(in_CVKT(act(R3, A(3, "a1 a3; a2; a3")), bp));
  auto seg = SplittingBlueprint::parse("splitting { type: segment; vertex A0 = a1; vertex A1 = a2, a3 }");
  auto bar = blueprint_base(seg);
  CHECK(bar.graph().num_vertices() == 2);
  CHECK(in_CVKT(bar, seg));
  CHECK_FALSE(in_CVKT(R3, seg));
  // membership agrees with the realization shape on small samples
  Rng rng(17);
  auto F = FreeFactorSystem::parse(3, "a1, a2");
  for (int t = 0; t < 40; ++t) {
    auto G = random_marked_graph(rng, 3, 3, 2);
    bool shape = false;
    for_each_realization(G, F, [&](const CoreSubgraphWitness& x) {
      shape = static_cast<int>(x.edges.size()) == G.graph().num_edges() - 1;
      return !shape;
    });
    CHECK(in_CVKT(G, coindex1_to_splitting(F)).has_value() == shape);
  }
}

TEST_CASE("attach points") {
  auto bp = loop3();
  auto R3 = MarkedGraph::rose(3);
  auto core = stallings_core(bp.vertices[0], R3, true);
  auto q = attach_point(core, R3, bp.rays[0]);
  CHECK(q.path.empty());
  CHECK(q.steps == 0);
  // a3 -> e1 e3: the axis runs along e1 inside the core
  auto G = act(R3, A(3, "a1; a2; a1 a3"));
  auto k = stallings_core(bp.vertices[0], G, true);
  auto q1 = attach_point(k, G, bp.rays[0]);
  auto q2 = attach_point(k, G, bp.rays[1]);
  CHECK(q1.path.size() == 1);
  CHECK(k.label_of(q1.path[0]) == DirEdge::forward(0));
  CHECK(q2.path.empty());
  // a ray inside the vertex group is rejected
  CHECK_THROWS_AS(attach_point(core, R3, RayDatum{W(3, ""), W(3, "a1 a2")}), Error);
  CHECK_THROWS_AS(attach_point(core, R3, RayDatum{W(3, "a1"), W(3, "a2^-1")}), Error);
  // the prefix can leave first
  auto q3 = attach_point(core, R3, RayDatum{W(3, "a1 a1"), W(3, "a3")});
  CHECK(q3.path.size() == 2);
}

TEST_CASE("retraction fixes the subcomplex") {
  auto bp = loop3();
  auto R3 = MarkedGraph::rose(3);
  CHECK(equivalent(retract_R(R3, bp), R3));
  auto G = act(R3, A(3, "a1; a2; a1 a3"));
  CHECK(equivalent(retract_R(G, bp), G));
  // outside the subcomplex the result still lies in it
  auto T = act(R3, A(3, "a1 a3; a2; a3"));
  auto r = retract_R(T, bp);
  CHECK(in_CVKT(r, bp));
  CHECK(equivalent(retract_R(r, bp), r));

  auto seg = SplittingBlueprint::parse("splitting { type: segment; vertex A0 = a1; vertex A1 = a2, a3 }");
  auto bar = blueprint_base(seg);
  CHECK(equivalent(retract_R(bar, seg), bar));

  Rng rng(3);
  for (int t = 0; t < 12; ++t) {
    auto x = walk(rng, R3, 1 + t % 4, bp);
    CHECK(equivalent(retract_R(x, bp), x));
  }
  for (int t = 0; t < 30; ++t) {
    auto x = random_marked_graph(rng, 3, 4);
    auto y = retract_R(x, bp);
    CHECK(in_CVKT(y, bp));
    CHECK(equivalent(retract_R(y, bp), y));
  }
}

TEST_CASE("retraction audits") {
  auto bp = loop3();
  Rng rng(21);
  std::vector<SplitAuditCase> cases;
  while (cases.size() < 120) {
    auto G = random_marked_graph(rng, 3, 4);
    auto f = random_forest(rng, G.graph());
    if (f.empty()) continue;
    cases.push_back({G, f});
  }
  auto par = split_audit_batch(cases, bp);
  auto ser = split_audit_batch_serial(cases, bp);
  CHECK(par == ser);
  for (int d : par) CHECK((d == 0 || d == 1));
  // collapsing the blow-up edge of an expanded rose
  auto th = act(lift_blowup(MarkedGraph::rose(3), enumerate_blowups(Graph::rose(3))[0]), Automorphism::identity(3));
  auto a = retraction_audit(th, std::vector<int>{3}, bp);
  CHECK(a.distance <= 1);
}
