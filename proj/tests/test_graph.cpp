#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "outspace/error.hpp"

using namespace outspace;

TEST_CASE("natural structure") {
  Graph t = theta_graph();
  auto r = natural_structure(t);
  CHECK(r.natural.num_vertices() == 2);
  CHECK(r.natural.num_edges() == 3);

  Graph sub;  // theta with e1 subdivided
  sub.add_vertex();
  sub.add_vertex();
  sub.add_vertex();
  sub.add_edge(0, 2);
  sub.add_edge(2, 1);
  sub.add_edge(0, 1);
  sub.add_edge(0, 1);
  r = natural_structure(sub);
  CHECK(r.natural.num_vertices() == 2);
  CHECK(r.natural.num_edges() == 3);
  CHECK(r.chains[0].size() == 2);
  CHECK(find_isomorphism(r.natural, t));

  Graph rose;  // rank 3 with a petal subdivided three times
  for (int i = 0; i < 4; ++i) rose.add_vertex();
  rose.add_edge(0, 1);
  rose.add_edge(1, 2);
  rose.add_edge(2, 3);
  rose.add_edge(3, 0);
  rose.add_edge(0, 0);
  rose.add_edge(0, 0);
  r = natural_structure(rose);
  CHECK(r.natural.num_vertices() == 1);
  CHECK(r.natural.num_edges() == 3);
  CHECK(r.vertex_map[2] == -1);

  Graph circle;
  circle.add_vertex();
  circle.add_vertex();
  circle.add_edge(0, 1);
  circle.add_edge(1, 0);
  CHECK_THROWS_AS(natural_structure(circle), Error);
}

TEST_CASE("natural subforests") {
  CHECK(enumerate_natural_subforests(Graph::rose(3)).size() == 1);
  auto f = enumerate_natural_subforests(theta_graph());
  CHECK(f.size() == 4);
  Graph needle;  // A: V-W, B loop at W
  needle.add_vertex("V");
  needle.add_vertex("W");
  needle.add_edge(0, 1, "A");
  needle.add_edge(1, 1, "B");
  f = enumerate_natural_subforests(needle);
  REQUIRE(f.size() == 2);
  CHECK(f[1] == std::vector<int>{0});
}

TEST_CASE("collapse") {
  Graph t = theta_graph();
  const int e1[] = {0};
  auto m = collapse(t, e1);
  CHECK(find_isomorphism(m.target, Graph::rose(2)));
  CHECK(m.edge_map[0] == -1);
  const int two[] = {0, 1};
  CHECK_THROWS_AS(collapse(t, two), Error);
  auto id = collapse(t, {});
  CHECK(id.target.num_edges() == 3);

  // f ē g with E = {e}: e=e1, f=e2, g=e3
  EdgePath p{1, {DirEdge::backward(1), DirEdge::forward(0), DirEdge::backward(2)}};
  REQUIRE(p.valid(t));
  bool clean = false;
  auto q = m.push(p, &clean);
  CHECK(q.edges.size() == 2);
  CHECK(clean);
}

TEST_CASE("pushforward commutes with reduction") {
  std::mt19937_64 rng(4);
  Graph t = theta_graph();
  for (auto forest : enumerate_natural_subforests(t)) {
    auto m = collapse(t, forest);
    CHECK(m.target.betti() == t.betti());
    for (int trial = 0; trial < 50; ++trial) {
      EdgePath p{0, {}};
      for (int s = 0; s < 8; ++s) {
        const auto& st = t.star(p.end(t));
        p.edges.push_back(st[rng() % st.size()]);
      }
      CHECK(m.push(p) == m.push(reduced(p)));
    }
  }
}

TEST_CASE("blow-ups") {
  auto b2 = enumerate_blowups(Graph::rose(2));
  CHECK(b2.size() == 3);
  CHECK(enumerate_blowups(theta_graph()).empty());
  auto b3 = enumerate_blowups(Graph::rose(3));
  CHECK(b3.size() == 25);
  for (const auto& b : b3) {
    const int f[] = {b.new_edge};
    auto m = collapse(b.graph, f);
    CHECK(find_isomorphism(m.target, Graph::rose(3)));
    CHECK(b.graph.is_natural());
    CHECK(b.graph.betti() == 3);
  }
}

TEST_CASE("isomorphism enumeration") {
  int count = 0;
  for_each_isomorphism(Graph::rose(2), Graph::rose(2), [&](const GraphIso&) {
    ++count;
    return true;
  });
  CHECK(count == 8);
  count = 0;
  for_each_isomorphism(theta_graph(), theta_graph(), [&](const GraphIso&) {
    ++count;
    return true;
  });
  CHECK(count == 12);
  CHECK_FALSE(find_isomorphism(theta_graph(), Graph::rose(2)));
}

TEST_CASE("graph text round trip") {
  auto f = parse_graph_file("graph { v: v0 v1; e: e1 v0 v1; e2 v1 v1; }");
  CHECK(f.graph.num_edges() == 2);
  CHECK_FALSE(f.base);
  auto again = parse_graph_file(format_graph(f.graph));
  CHECK(format_graph(again.graph) == format_graph(f.graph));
  CHECK_THROWS_AS(parse_graph_file("graph { v: v0; e: e1 v0 v9; }"), Error);
}
