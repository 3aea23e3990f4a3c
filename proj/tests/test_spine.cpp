#include "doctest.h"
#include "helpers.hpp"
#include "outspace/sampling.hpp"
#include "outspace/spine.hpp"

using namespace outspace;

TEST_CASE("neighbors of small vertices") {
  auto R2 = MarkedGraph::rose(2);
  CHECK(collapse_neighbors(R2).empty());
  CHECK(neighbors(R2).size() == 3);
  auto th = theta_marked();
  CHECK(collapse_neighbors(th).size() == 3);
  CHECK(expansion_neighbors(th).empty());
  for (const auto& nb : neighbors(R2)) {
    CHECK(verify_step(R2, nb.vertex, nb.step));
    bool back = false;
    for (const auto& b : neighbors(nb.vertex)) back = back || equivalent(b.vertex, R2).has_value();
    CHECK(back);
  }
  // rank 3: every expansion collapses back along its certificate
  auto R3 = MarkedGraph::rose(3);
  auto ex = expansion_neighbors(R3);
  CHECK(ex.size() > 25);
  for (std::size_t i = 0; i < ex.size(); i += 7) CHECK(verify_step(R3, ex[i].vertex, ex[i].step));
}

TEST_CASE("bfs distances") {
  auto R2 = MarkedGraph::rose(2);
  CHECK(bfs_distance(R2, R2, 0) == 0);
  CHECK(bfs_distance(R2, theta_marked(), 3) == 1);
  auto t = act(R2, A(2, "a1 a2; a2"));
  auto d = bfs_distance(R2, t, 6);
  REQUIRE(d);
  CHECK(*d == 2);
  CHECK(bfs_distance_serial(R2, t, 6) == d);
  CHECK_FALSE(bfs_distance(R2, t, 1));
  auto p = bfs_path(R2, t, 6);
  REQUIRE(p);
  CHECK(p->length() == 2);
  CHECK(p->verify());
  // symmetry, triangle inequality, isometry
  Rng rng(8);
  for (int s = 0; s < 6; ++s) {
    auto u = random_marked_graph(rng, 2, 2, 2), v = random_marked_graph(rng, 2, 2, 2),
         w = random_marked_graph(rng, 2, 2, 2);
    auto uv = bfs_distance(u, v, 6), vu = bfs_distance(v, u, 6);
    CHECK(uv == vu);
    auto uw = bfs_distance(u, w, 6), wv = bfs_distance(w, v, 6);
    if (uv && uw && wv) CHECK(*uv <= *uw + *wv);
    auto phi = random_automorphism(rng, 2, 3);
    CHECK(bfs_distance(act(u, phi), act(v, phi), 6) == uv);
  }
  CHECK(ball_size(R2, 2) == ball_size(R2, 2, false));
}

TEST_CASE("fold paths") {
  auto R2 = MarkedGraph::rose(2);
  auto same = fold_path(R2, R2);
  CHECK(same.length() == 0);
  auto t = act(R2, A(2, "a1 a2; a2"));
  auto p = fold_path(R2, t);
  CHECK(p.verify());
  CHECK(p.length() <= 4);
  CHECK(*bfs_distance(R2, t, 6) <= p.length());
  // from a non-rose start
  auto q = fold_path(theta_marked(), t);
  CHECK(q.verify());

  Rng rng(4);
  auto R3 = MarkedGraph::rose(3);
  auto F = FreeFactorSystem::parse(3, "a1");
  for (int s = 0; s < 12; ++s) {
    auto phi = s % 2 ? random_automorphism(rng, 3, 1 + s % 4) : random_stab_automorphism(rng, 3, 1, 1 + s % 4);
    auto target = act(R3, phi);
    auto path = fold_path(R3, target, &F);
    CHECK(path.verify());
    CHECK(equivalent(path.vertices.back(), target));
    if (s % 2 == 0) CHECK(path.guarded);
  }
}
