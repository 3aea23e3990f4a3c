#include "doctest.h"
#include "helpers.hpp"
#include "outspace/error.hpp"
#include "outspace/witness.hpp"

using namespace outspace;

TEST_CASE("theta and its inverse") {
  CHECK(theta(3, 2).map() == M(3, "a1 a2; a1; a3"));
  CHECK(theta_inverse(3, 2).map() == M(3, "a2; a2^-1 a1; a3"));
  CHECK(is_automorphism(theta(3, 2).map()));
  for (int n = 3; n <= 6; ++n)
    for (int m = 2; m < n; ++m) {
      CHECK(compose(theta(n, m), theta_inverse(n, m)) == Automorphism::identity(n));
      for (auto set : {NielsenSet::transvections, NielsenSet::classical})
        CHECK(product(n, theta_word(n, m, set)) == theta(n, m));
      CHECK(theta_word(n, m, NielsenSet::classical).size() == std::size_t(m));
    }
  CHECK(theta_word(3, 2, NielsenSet::transvections).size() == 3);
  CHECK_THROWS_AS(theta(3, 3), Error);
  CHECK_THROWS_AS(theta(3, 1), Error);
}

TEST_CASE("u_k and matrix counts") {
  CHECK(u_k(3, 2, 0) == W(3, "a1"));
  CHECK(u_k(3, 2, 1) == W(3, "a1 a2"));
  const int fib[] = {0, 1, 1, 2, 3, 5, 8};
  for (int k = 0; k <= 6; ++k) CHECK(occurrence_count(2, 2, k) == fib[k]);
  for (int n = 3; n <= 5; ++n)
    for (int m = 2; m < n; ++m)
      for (int k = 0; k <= 12; ++k) {
        std::size_t canc = 0;
        Word u = u_k(n, m, k, &canc);
        CHECK(canc == 0);
        for (int j = 1; j <= m; ++j) {
          long long direct = 0;
          for (Letter l : u.letters()) direct += l.index() == j;
          CHECK(occurrence_count(m, j, k) == direct);
        }
        for (int p = 1; p < m; ++p) CHECK(transition_count(m, p, k) == transition_count_direct(u, p));
      }
  auto t = TransitionMatrix::of(theta(4, 3).map(), 3);
  auto sums = t.column_sums();
  for (int j = 1; j <= 3; ++j) CHECK(sums[j - 1] == long(theta(4, 3).map().image(j).size()));
}

TEST_CASE("golden ratio") {
  CHECK(near_golden(growth_ratio(20), BigRational(1, 1000)));
  CHECK_FALSE(near_golden(growth_ratio(2), BigRational(1, 1000)));
  CHECK_FALSE(near_golden(BigRational(3, 2), BigRational(1, 1000)));
}

TEST_CASE("phi_k connected") {
  auto P = WitnessParams::connected(3, 1);
  CHECK(phi_k(P, 0).map() == M(3, "a1; a2; a3 a1"));
  CHECK(phi_k(P, 1).map() == M(3, "a1; a2; a3 a1 a2"));
  CHECK(phi_k(P, 5) == phi_k_factored(P, 5));
  CHECK(nielsen_upper_bound(P, 12, NielsenSet::transvections) == 73);
  CHECK(nielsen_upper_bound(P, 12, NielsenSet::classical) == 49);
  CHECK_THROWS_AS(WitnessParams::connected(3, 2), Error);
  CHECK_THROWS_AS(WitnessParams::connected(3, 0), Error);
  auto P2 = WitnessParams::connected(5, 2);
  for (int k = 0; k <= 4; ++k) CHECK(phi_k(P2, k) == phi_k_factored(P2, k));
}

TEST_CASE("distortion report case 1") {
  auto rep = distortion_report(WitnessParams::connected(3, 1), 14);
  const long long want[] = {0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377};
  CHECK(rep.i_0 == 0);
  for (int k = 0; k <= 14; ++k) {
    CHECK(rep.rows[k].i_k == want[k]);
    CHECK(BigInt(rep.rows[k].i_k) == occurrence_count(2, 2, k));
  }
  CHECK(rep.crossover() == 13);
  auto rc = distortion_report(WitnessParams::connected(3, 1), 14, NielsenSet::classical);
  CHECK(rc.crossover() == 11);
  for (const auto* r : {&rep, &rc})
    for (int k = 5; k <= 14; ++k)
      CHECK(double(r->rows[k].i_k) / r->rows[k].upper_nielsen > double(r->rows[k - 1].i_k) / r->rows[k - 1].upper_nielsen);
  CHECK(rep.csv().rfind("k,upper_nielsen,i_k,spine_lb\n0,1,0,0\n1,7,1,1\n", 0) == 0);
}

TEST_CASE("case 2 complex") {
  auto P = WitnessParams::two_component(4, 1, 1);
  CHECK(P.coindex() == 3);
  CHECK_THROWS_AS(WitnessParams::two_component(3, 1, 2), Error);
  auto c = case2_build(P);
  CHECK(c.Gp.graph().num_vertices() == 3);
  CHECK(c.G.graph().num_vertices() == 2);
  EdgePath u0 = c.u_prime(0);
  CHECK(u0.edges == std::vector<DirEdge>{DirEdge::backward(c.eta0), DirEdge::forward(0), DirEdge::forward(c.eta0)});
  for (int k = 0; k <= 10; ++k) {
    EdgePath u = c.u_prime(k);
    Word uk = u_k(4, 2, k);
    long long ends = (uk.front().index() <= 1) + (uk.back().index() <= 1);
    CHECK(BigInt(c.eta0_count(u)) == transition_count(2, 1, k) + ends);
    c.gamma_prime(k);
  }
  auto s = witness_setup(P);
  auto ctx = build_context(s.A, s.B, s.G0);
  CHECK(ctx.shape == ComplementShape::two_component);
  CHECK(count_i(ctx, CyclicWord::of(s.c0)).value == 2);
  for (int k = 0; k <= 8; ++k) {
    EdgePath u = c.u_prime(k);
    long long want = 2 * c.eta0_count(u) + 2;
    CHECK(count_i(ctx, CyclicWord::of(witness_class(P, k))).value == want);
    // the loop Phi'_k(gamma') carries phi_k(c_0)
    EdgePath g = c.gamma_prime(k);
    EdgePath at_base{c.v1, {DirEdge::backward(c.eta1)}};
    at_base.edges.insert(at_base.edges.end(), g.edges.begin(), g.edges.end());
    at_base.edges.push_back(DirEdge::forward(c.eta1));
    CHECK(CyclicWord::of(c.Gp.decode(at_base)) == CyclicWord::of(witness_class(P, k)));
  }
  auto P2 = WitnessParams::two_component(5, 2, 1);
  for (int k = 0; k <= 4; ++k) CHECK(phi_k(P2, k) == phi_k_factored(P2, k));
}

TEST_CASE("witness stabilises systems") {
  auto P1 = WitnessParams::connected(3, 1);
  auto P3 = WitnessParams::multi_component(5, {1, 1, 1, 1});
  CHECK(P3.coindex() == 4);
  for (int k = 0; k <= 4; ++k) {
    MarkedGraph G = act(MarkedGraph::rose(3), phi_k(P1, k));
    CHECK(realizes(G, FreeFactorSystem::parse(3, "a1")));
    CHECK(realizes(G, FreeFactorSystem::parse(3, "a1, a2")));
    CHECK(realizes(G, FreeFactorSystem::parse(3, "a2")));
    auto s = witness_setup(P3);
    MarkedGraph H = act(s.G0, phi_k(P3, k));
    for (const auto& comp : witness_system(P3).components) CHECK(realizes(H, FreeFactorSystem{5, {comp}}));
    CHECK(realizes(H, FreeFactorSystem::parse(5, "a1 | a2 | a3, a4, a5")));
  }
  CHECK_FALSE(realizes(MarkedGraph::rose(3), FreeFactorSystem::parse(3, "a1 | a2")));
}
