#include "outspace/sampling.hpp"

#include <algorithm>
#include <numeric>

#include "outspace/error.hpp"

namespace outspace {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

NielsenMove random_move(Rng& rng, int lo, int hi, int jlo, int jhi, bool transpositions) {
  using K = NielsenMove::Kind;
  NielsenMove m;
  int kinds = transpositions ? 4 : 3;
  for (;;) {
    m.kind = static_cast<K>(uniform(rng, 0, kinds - 1));
    m.i = uniform(rng, lo, hi);
    m.j = uniform(rng, jlo, jhi);
    m.sign = uniform(rng, 0, 1) ? 1 : -1;
    if (m.kind == K::inversion || m.i != m.j) return m;
  }
}

}  // namespace

std::vector<NielsenMove> random_nielsen_word(Rng& rng, int n, int len, bool transpositions) {
  require(n >= 2, "random moves need rank >= 2");
  std::vector<NielsenMove> w;
  for (int t = 0; t < len; ++t) w.push_back(random_move(rng, 1, n, 1, n, transpositions));
  return w;
}

Automorphism random_automorphism(Rng& rng, int n, int len) {
  if (n == 1) return uniform(rng, 0, 1) ? Automorphism::identity(1) : NielsenMove{}.to_automorphism(1);
  return product(n, random_nielsen_word(rng, n, len));
}

Automorphism random_stab_automorphism(Rng& rng, int n, int r, int len) {
  require(r >= 1 && r < n, "stab sampling needs 1 <= r < n");
  std::vector<NielsenMove> w;
  for (int t = 0; t < len; ++t) {
    // a_i inside A may only pick up letters of A
    int i = uniform(rng, 1, n);
    if (i <= r && r == 1)
      w.push_back(NielsenMove{NielsenMove::Kind::inversion, i, i, 1});
    else
      w.push_back(random_move(rng, i, i, 1, i <= r ? r : n, false));
  }
  return product(n, w);
}

Automorphism random_flag_automorphism(Rng& rng, int n, const std::vector<int>& levels, int len) {
  std::vector<NielsenMove> w;
  for (int t = 0; t < len; ++t) {
    int i = uniform(rng, 1, n);
    int top = n;
    for (int r : levels)
      if (i <= r) {
        top = r;
        break;
      }
    if (top == 1)
      w.push_back(NielsenMove{NielsenMove::Kind::inversion, i, i, 1});
    else
      w.push_back(random_move(rng, i, i, 1, top, false));
  }
  return product(n, w);
}

std::vector<int> random_forest(Rng& rng, const Graph& g, bool nonempty) {
  std::vector<int> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<int> f;
  for (int e : order) {
    int a = find(g.origin(e)), b = find(g.terminus(e));
    if (a == b) continue;
    if (!(nonempty && f.empty()) && uniform(rng, 0, 1) == 0) continue;
    parent[a] = b;
    f.push_back(e);
  }
  std::sort(f.begin(), f.end());
  return f;
}

MarkedGraph random_marked_graph(Rng& rng, int n, int steps, int twist) {
  MarkedGraph G = MarkedGraph::rose(n);
  if (n >= 2 && twist > 0) G = act(G, random_automorphism(rng, n, twist));
  for (int s = 0; s < steps; ++s) {
    auto blowups = enumerate_blowups(G.graph());
    bool grow = !blowups.empty() && (G.graph().num_vertices() == 1 || uniform(rng, 0, 2) > 0);
    if (grow) {
      G = lift_blowup(G, pick(rng, blowups));
    } else {
      auto f = random_forest(rng, G.graph());
      if (!f.empty()) G = collapse_marked(G, f);
    }
  }
  return G.normalized();
}

PointedMarkedGraph random_pointed(Rng& rng, int n, int steps) {
  MarkedGraph G = random_marked_graph(rng, n, steps);
  const Graph& g = G.graph();
  if (uniform(rng, 0, 2) == 0) return base_on_edge(G, uniform(rng, 0, g.num_edges() - 1));
  int v = uniform(rng, 0, g.num_vertices() - 1);
  // path from v to the current base
  std::vector<DirEdge> tree = spanning_tree(g, G.base());
  EdgePath to_base = tree_path(g, tree, G.base(), v, G.base());
  return PointedMarkedGraph(G.rebased(to_base));
}

}  // namespace outspace
