#include "outspace/retract_aut.hpp"

#include <queue>

#include "outspace/error.hpp"

namespace outspace {

bool is_relatively_natural(const Graph& g, int base) {
  if (!g.is_core()) return false;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.valence(v) == 2 && v != base && g.betti() > 1) return false;
  // a circle is one loop at the basepoint
  return g.betti() > 1 || g.num_vertices() == 1;
}

PointedMarkedGraph::PointedMarkedGraph(MarkedGraph G) : G_(std::move(G)) {
  if (!is_relatively_natural(G_.graph(), G_.base())) fail("pointed graph is not in relatively natural form");
}

PointedMarkedGraph PointedMarkedGraph::from(const MarkedGraph& G) {
  const int keep[] = {G.base()};
  auto ref = natural_structure(G.graph(), keep);
  std::vector<EdgePath> m;
  for (const auto& p : G.marking()) m.push_back(ref.push(p));
  return PointedMarkedGraph(MarkedGraph(ref.natural, ref.vertex_map[G.base()], std::move(m)));
}

PointedMarkedGraph PointedMarkedGraph::rose(int rank) { return PointedMarkedGraph(MarkedGraph::rose(rank)); }

namespace {

// shortest edge path from `from` to `to`
EdgePath bfs_path(const Graph& g, int from, int to) {
  std::vector<DirEdge> via(g.num_vertices(), DirEdge{-1});
  std::vector<bool> seen(g.num_vertices(), false);
  std::queue<int> q;
  q.push(from);
  seen[from] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (DirEdge d : g.star(v)) {
      int w = g.terminus(d);
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = d;
      q.push(w);
    }
  }
  require(seen[to], "graph is not connected");
  std::vector<DirEdge> rev;
  for (int v = to; v != from; v = g.origin(via[v])) rev.push_back(via[v]);
  return EdgePath{from, std::vector<DirEdge>(rev.rbegin(), rev.rend())};
}

std::string fresh_name(const std::string& stem, int start, const std::function<bool(const std::string&)>& taken) {
  for (int k = start;; ++k) {
    std::string s = stem + std::to_string(k);
    if (!taken(s)) return s;
  }
}

}  // namespace

PointedMarkedGraph base_on_edge(const MarkedGraph& G, int e) {
  const Graph& g0 = G.graph();
  require(e >= 0 && e < g0.num_edges(), "edge out of range");
  Graph g;
  for (int v = 0; v < g0.num_vertices(); ++v) g.add_vertex(g0.vertex_name(v));
  int mid = g.add_vertex(fresh_name("p", 0, [&](const std::string& s) { return g0.find_vertex(s).has_value(); }));
  for (int i = 0; i < g0.num_edges(); ++i)
    g.add_edge(g0.origin(i), i == e ? mid : g0.terminus(i), g0.edge_name(i));
  int half = g.add_edge(mid, g0.terminus(e), g0.edge_name(e) + "'");
  std::vector<EdgePath> m;
  for (const auto& p : G.marking()) {
    EdgePath q{p.start, {}};
    for (DirEdge d : p.edges) {
      if (d.edge() != e) {
        q.edges.push_back(d);
      } else if (!d.reversed()) {
        q.edges.push_back(d);
        q.edges.push_back(DirEdge::forward(half));
      } else {
        q.edges.push_back(DirEdge::backward(half));
        q.edges.push_back(d);
      }
    }
    m.push_back(q);
  }
  MarkedGraph sub(g, G.base(), std::move(m));
  return PointedMarkedGraph::from(sub.rebased(bfs_path(g, mid, G.base())));
}

std::optional<GraphIso> pointed_equivalence(const PointedMarkedGraph& x, const PointedMarkedGraph& y) {
  const Graph &a = x.graph(), &b = y.graph();
  if (x.rank() != y.rank() || a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges())
    return std::nullopt;
  std::vector<EdgePath> mx, my;
  for (const auto& p : x.marked().marking()) mx.push_back(reduced(p));
  for (const auto& p : y.marked().marking()) my.push_back(reduced(p));
  std::optional<GraphIso> out;
  for_each_isomorphism(
      a, b,
      [&](const GraphIso& h) {
        for (std::size_t i = 0; i < mx.size(); ++i) {
          if (mx[i].edges.size() != my[i].edges.size()) return true;
          for (std::size_t t = 0; t < mx[i].edges.size(); ++t)
            if (h(mx[i].edges[t]) != my[i].edges[t]) return true;
        }
        out = h;
        return false;
      },
      {}, std::make_pair(x.base(), y.base()));
  return out;
}

PointedMarkedGraph act_pointed(const PointedMarkedGraph& x, const Automorphism& phi) {
  return PointedMarkedGraph(act(x.marked(), phi));
}

PointedMarkedGraph pointed_collapse(const PointedMarkedGraph& x, std::span<const int> forest, CollapseMap* map) {
  CollapseMap cm;
  MarkedGraph c = collapse_marked(x.marked(), forest, cm);
  if (map) *map = cm;
  return PointedMarkedGraph(std::move(c));
}

PointedMarkedGraph embed_j(const PointedMarkedGraph& w) {
  const Graph& g0 = w.graph();
  Graph g = g0;
  const int n = w.rank() + 1;
  int loop = g.add_edge(w.base(), w.base(),
                        fresh_name("e", n, [&](const std::string& s) { return g0.find_edge(s).has_value(); }));
  std::vector<EdgePath> m = w.marked().marking();
  m.push_back(EdgePath{w.base(), {DirEdge::forward(loop)}});
  return PointedMarkedGraph(MarkedGraph(g, w.base(), std::move(m)));
}

AutRetraction retract_r_full(const PointedMarkedGraph& x) {
  const int n = x.rank();
  require(n >= 2, "retract_r needs rank >= 2");
  std::vector<Word> gens;
  for (int i = 1; i < n; ++i) gens.push_back(Word::generator(n, i));
  AutRetraction r;
  r.core = stallings_core(gens, x.marked(), true);
  std::vector<EdgePath> loops;
  for (const auto& l : r.core.loops) loops.push_back(l);
  Graph named;
  const Graph& k = r.core.graph;
  for (int v = 0; v < k.num_vertices(); ++v) named.add_vertex("q" + std::to_string(v));
  for (int e = 0; e < k.num_edges(); ++e) named.add_edge(k.origin(e), k.terminus(e), "k" + std::to_string(e + 1));
  MarkedGraph K(named, r.core.base, std::move(loops));
  const int keep[] = {r.core.base};
  auto ref = natural_structure(K.graph(), keep);
  std::vector<EdgePath> m;
  for (const auto& p : K.marking()) m.push_back(ref.push(p));
  r.result = PointedMarkedGraph(MarkedGraph(ref.natural, ref.vertex_map[r.core.base], std::move(m)));
  r.natural_of.resize(k.num_edges());
  for (int e = 0; e < k.num_edges(); ++e) r.natural_of[e] = ref.position[e].natural_edge;
  return r;
}

AutAudit lipschitz_audit(const PointedMarkedGraph& x, std::span<const int> forest) {
  require(is_forest(x.graph(), forest), "audit needs a forest of x");
  PointedMarkedGraph xp = pointed_collapse(x, forest);
  AutRetraction R = retract_r_full(x);
  PointedMarkedGraph rp = retract_r(xp);

  std::vector<bool> in_f(x.graph().num_edges(), false);
  for (int e : forest) in_f[e] = true;
  const int NE = R.result.graph().num_edges();
  std::vector<int> total(NE, 0), inside(NE, 0);
  for (int e = 0; e < R.core.graph.num_edges(); ++e) {
    ++total[R.natural_of[e]];
    if (in_f[R.core.label[e].edge()]) ++inside[R.natural_of[e]];
  }
  AutAudit out;
  for (int e = 0; e < NE; ++e)
    if (total[e] > 0 && inside[e] == total[e]) out.forest.push_back(e);
  PointedMarkedGraph rc = out.forest.empty() ? R.result : pointed_collapse(R.result, out.forest);
  if (!pointed_equivalent(rc, rp)) violated("r(x / F) is not r(x) / F'");
  out.distance = out.forest.empty() ? 0 : 1;
  return out;
}

std::vector<int> audit_batch_serial(std::span<const AuditCase> cases) {
  std::vector<int> d(cases.size(), -1);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    try {
      d[i] = lipschitz_audit(cases[i].x, cases[i].forest).distance;
    } catch (const Error&) {
      d[i] = -1;
    }
  }
  return d;
}

std::vector<int> audit_batch(std::span<const AuditCase> cases) {
  std::vector<int> d(cases.size(), -1);
  const long N = static_cast<long>(cases.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < N; ++i) {
    try {
      d[i] = lipschitz_audit(cases[i].x, cases[i].forest).distance;
    } catch (const Error&) {
      d[i] = -1;
    }
  }
  return d;
}

}  // namespace outspace
