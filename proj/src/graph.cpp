#include "outspace/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "outspace/error.hpp"

namespace outspace {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

int Graph::add_vertex(std::string name) {
  if (name.empty()) name = "v" + std::to_string(vertex_names_.size());
  vertex_names_.push_back(std::move(name));
  star_.emplace_back();
  return num_vertices() - 1;
}

int Graph::add_edge(int origin, int terminus, std::string name) {
  require(origin >= 0 && origin < num_vertices() && terminus >= 0 && terminus < num_vertices(),
          "edge endpoint out of range");
  int e = num_edges();
  if (name.empty()) name = "e" + std::to_string(e + 1);
  edge_names_.push_back(std::move(name));
  ends_.emplace_back(origin, terminus);
  star_[origin].push_back(DirEdge::forward(e));
  star_[terminus].push_back(DirEdge::backward(e));
  return e;
}

int Graph::components() const {
  UnionFind uf(num_vertices());
  int c = num_vertices();
  for (auto [o, t] : ends_)
    if (uf.unite(o, t)) --c;
  return c;
}

bool Graph::is_core() const {
  if (num_vertices() == 0 || !connected()) return false;
  for (int v = 0; v < num_vertices(); ++v)
    if (valence(v) < 2) return false;
  return true;
}

bool Graph::is_natural() const {
  if (!is_core()) return false;
  for (int v = 0; v < num_vertices(); ++v)
    if (valence(v) == 2) return false;
  return true;
}

std::optional<int> Graph::find_vertex(const std::string& name) const {
  auto it = std::find(vertex_names_.begin(), vertex_names_.end(), name);
  if (it == vertex_names_.end()) return std::nullopt;
  return static_cast<int>(it - vertex_names_.begin());
}

std::optional<int> Graph::find_edge(const std::string& name) const {
  auto it = std::find(edge_names_.begin(), edge_names_.end(), name);
  if (it == edge_names_.end()) return std::nullopt;
  return static_cast<int>(it - edge_names_.begin());
}

std::string Graph::dir_name(DirEdge d) const { return edge_names_[d.edge()] + (d.reversed() ? "^-1" : ""); }

Graph Graph::rose(int rank) {
  Graph g;
  g.add_vertex();
  for (int i = 0; i < rank; ++i) g.add_edge(0, 0);
  return g;
}

bool EdgePath::reduced() const {
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] == edges[i - 1].reverse()) return false;
  return true;
}

bool EdgePath::valid(const Graph& g) const {
  if (start < 0 || start >= g.num_vertices()) return false;
  int at = start;
  for (DirEdge d : edges) {
    if (d.edge() < 0 || d.edge() >= g.num_edges() || g.origin(d) != at) return false;
    at = g.terminus(d);
  }
  return true;
}

EdgePath EdgePath::inverse(const Graph& g) const {
  EdgePath r{end(g), {}};
  r.edges.reserve(edges.size());
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) r.edges.push_back(it->reverse());
  return r;
}

std::string EdgePath::str(const Graph& g) const {
  if (edges.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) s += ' ';
    s += g.dir_name(edges[i]);
  }
  return s;
}

void push_reduced(std::vector<DirEdge>& acc, DirEdge d) {
  if (!acc.empty() && acc.back() == d.reverse())
    acc.pop_back();
  else
    acc.push_back(d);
}

EdgePath reduced(const EdgePath& p) {
  EdgePath r{p.start, {}};
  r.edges.reserve(p.edges.size());
  for (DirEdge d : p.edges) push_reduced(r.edges, d);
  return r;
}

EdgePath concat(const Graph& g, const EdgePath& p, const EdgePath& q) {
  require(p.end(g) == q.start, "paths do not concatenate");
  EdgePath r = reduced(p);
  for (DirEdge d : q.edges) push_reduced(r.edges, d);
  return r;
}

std::vector<DirEdge> cyclically_reduced(std::vector<DirEdge> c) {
  std::vector<DirEdge> acc;
  for (DirEdge d : c) push_reduced(acc, d);
  std::size_t i = 0, j = acc.size();
  while (j - i >= 2 && acc[i] == acc[j - 1].reverse()) {
    ++i;
    --j;
  }
  return {acc.begin() + i, acc.begin() + j};
}

std::vector<DirEdge> canonical_rotation(const std::vector<DirEdge>& c) {
  const std::size_t n = c.size();
  if (n == 0) return {};
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      DirEdge x = c[(r + k) % n], y = c[(best + k) % n];
      if (x != y) {
        if (x < y) best = r;
        break;
      }
    }
  }
  std::vector<DirEdge> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = c[(best + k) % n];
  return out;
}

std::vector<DirEdge> spanning_tree(const Graph& g, int root) {
  std::vector<DirEdge> parent(g.num_vertices(), DirEdge{-1});
  std::vector<bool> seen(g.num_vertices(), false);
  std::queue<int> q;
  q.push(root);
  seen[root] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (DirEdge d : g.star(v)) {
      int w = g.terminus(d);
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = d;
      q.push(w);
    }
  }
  return parent;
}

EdgePath tree_path(const Graph& g, const std::vector<DirEdge>& parent, int root, int from, int to) {
  auto up = [&](int v) {
    std::vector<DirEdge> p;  // root -> v
    while (v != root) {
      DirEdge d = parent[v];
      if (d.code < 0) fail("vertex not reached by spanning tree");
      p.push_back(d);
      v = g.origin(d);
    }
    std::reverse(p.begin(), p.end());
    return p;
  };
  auto a = up(from), b = up(to);
  EdgePath r{from, {}};
  for (auto it = a.rbegin(); it != a.rend(); ++it) push_reduced(r.edges, it->reverse());
  for (DirEdge d : b) push_reduced(r.edges, d);
  return r;
}

Refinement natural_structure(const Graph& g, std::span<const int> keep) {
  Refinement out;
  const int V = g.num_vertices();
  std::vector<bool> nat(V, false);
  for (int v = 0; v < V; ++v) nat[v] = g.valence(v) != 2;
  for (int v : keep) nat[v] = true;
  out.vertex_map.assign(V, -1);
  for (int v = 0; v < V; ++v)
    if (nat[v]) out.vertex_map[v] = out.natural.add_vertex(g.vertex_name(v));
  out.position.assign(g.num_edges(), {});
  std::vector<bool> used(g.num_edges(), false);
  for (int v = 0; v < V; ++v) {
    if (!nat[v]) continue;
    for (DirEdge d0 : g.star(v)) {
      if (used[d0.edge()]) continue;
      std::vector<DirEdge> chain{d0};
      used[d0.edge()] = true;
      int at = g.terminus(d0);
      DirEdge last = d0;
      while (!nat[at]) {
        DirEdge next = g.star(at)[0] == last.reverse() ? g.star(at)[1] : g.star(at)[0];
        if (used[next.edge()]) violated("natural_structure: chain revisits an edge");
        used[next.edge()] = true;
        chain.push_back(next);
        last = next;
        at = g.terminus(next);
      }
      std::string name = g.edge_name(d0.edge());
      int ne = out.natural.add_edge(out.vertex_map[v], out.vertex_map[at], name);
      for (int i = 0; i < static_cast<int>(chain.size()); ++i)
        out.position[chain[i].edge()] = {ne, i, !chain[i].reversed()};
      out.chains.push_back(std::move(chain));
    }
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (!used[e]) fail("graph has a circle component; no natural structure");
  return out;
}

EdgePath Refinement::push(const EdgePath& p) const {
  require(p.start >= 0 && vertex_map[p.start] >= 0, "path starts inside a natural edge");
  EdgePath r{vertex_map[p.start], {}};
  std::size_t i = 0;
  while (i < p.edges.size()) {
    DirEdge d = p.edges[i];
    const Pos& pos = position[d.edge()];
    const auto& ch = chains[pos.natural_edge];
    const int len = static_cast<int>(ch.size());
    bool with = (d == ch[pos.index]);
    if (with ? pos.index != 0 : pos.index != len - 1) fail("path enters a natural edge from its interior");
    if (i + len > p.edges.size()) fail("path ends inside a natural edge");
    for (int k = 0; k < len; ++k) {
      DirEdge want = with ? ch[k] : ch[len - 1 - k].reverse();
      if (p.edges[i + k] != want) fail("path turns around inside a natural edge");
    }
    r.edges.push_back(with ? DirEdge::forward(pos.natural_edge) : DirEdge::backward(pos.natural_edge));
    i += len;
  }
  return r;
}

bool is_forest(const Graph& g, std::span<const int> edges) {
  UnionFind uf(g.num_vertices());
  for (int e : edges)
    if (!uf.unite(g.origin(e), g.terminus(e))) return false;
  return true;
}

std::vector<std::vector<int>> enumerate_natural_subforests(const Graph& g, bool include_empty) {
  const int E = g.num_edges();
  require(E < 24, "too many edges to enumerate subforests");
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = include_empty ? 0 : 1; mask < (1u << E); ++mask) {
    std::vector<int> es;
    for (int e = 0; e < E; ++e)
      if (mask >> e & 1) es.push_back(e);
    if (is_forest(g, es)) out.push_back(std::move(es));
  }
  return out;
}

std::optional<DirEdge> CollapseMap::image(DirEdge d) const {
  int e = edge_map[d.edge()];
  if (e < 0) return std::nullopt;
  return d.reversed() ? DirEdge::backward(e) : DirEdge::forward(e);
}

EdgePath CollapseMap::push(const EdgePath& p, bool* erasure_sufficed) const {
  require(p.start >= 0 && p.start < static_cast<int>(vertex_map.size()), "path not in source graph");
  std::vector<DirEdge> raw;
  for (DirEdge d : p.edges) {
    require(d.edge() < static_cast<int>(edge_map.size()), "path not in source graph");
    if (auto im = image(d)) raw.push_back(*im);
  }
  EdgePath r{vertex_map[p.start], {}};
  for (DirEdge d : raw) push_reduced(r.edges, d);
  if (erasure_sufficed) *erasure_sufficed = r.edges.size() == raw.size();
  return r;
}

CollapseMap collapse(const Graph& g, std::span<const int> forest) {
  require(is_forest(g, forest), "collapse: edge set contains a cycle");
  CollapseMap m;
  m.forest.assign(forest.begin(), forest.end());
  std::sort(m.forest.begin(), m.forest.end());
  UnionFind uf(g.num_vertices());
  std::vector<bool> gone(g.num_edges(), false);
  for (int e : forest) {
    gone[e] = true;
    uf.unite(g.origin(e), g.terminus(e));
  }
  std::vector<int> rep_id(g.num_vertices(), -1);
  m.vertex_map.assign(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    int r = uf.find(v);
    if (rep_id[r] < 0) rep_id[r] = m.target.add_vertex(g.vertex_name(r));
    m.vertex_map[v] = rep_id[r];
  }
  m.edge_map.assign(g.num_edges(), -1);
  for (int e = 0; e < g.num_edges(); ++e)
    if (!gone[e]) m.edge_map[e] = m.target.add_edge(m.vertex_map[g.origin(e)], m.vertex_map[g.terminus(e)], g.edge_name(e));
  return m;
}

Blowup blow_up(const Graph& g, int v, std::span<const DirEdge> moved) {
  Blowup b;
  b.vertex = v;
  b.moved.assign(moved.begin(), moved.end());
  for (DirEdge d : moved) require(g.origin(d) == v, "blow-up direction not at vertex");
  for (int u = 0; u < g.num_vertices(); ++u) b.graph.add_vertex(g.vertex_name(u));
  b.new_vertex = b.graph.add_vertex("v" + std::to_string(g.num_vertices()));
  auto is_moved = [&](DirEdge d) { return std::find(moved.begin(), moved.end(), d) != moved.end(); };
  for (int e = 0; e < g.num_edges(); ++e) {
    int o = g.origin(e), t = g.terminus(e);
    if (is_moved(DirEdge::forward(e))) o = b.new_vertex;
    if (is_moved(DirEdge::backward(e))) t = b.new_vertex;
    b.graph.add_edge(o, t, g.edge_name(e));
  }
  b.new_edge = b.graph.add_edge(v, b.new_vertex, "e" + std::to_string(g.num_edges() + 1));
  return b;
}

std::vector<Blowup> enumerate_blowups(const Graph& g) {
  std::vector<Blowup> out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& st = g.star(v);
    const int d = static_cast<int>(st.size());
    if (d < 4) continue;
    // moved part never contains st[0], so each unordered bipartition appears once
    for (std::uint32_t mask = 0; mask < (1u << (d - 1)); ++mask) {
      int sz = __builtin_popcount(mask);
      if (sz < 2 || d - sz < 2) continue;
      std::vector<DirEdge> moved;
      for (int k = 0; k < d - 1; ++k)
        if (mask >> k & 1) moved.push_back(st[k + 1]);
      out.push_back(blow_up(g, v, moved));
    }
  }
  return out;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const Graph& a, const Graph& b, const std::function<bool(const GraphIso&)>& visit, const EdgeCompat& compat)
      : a_(a), b_(b), visit_(visit), compat_(compat) {
    iso_.vertex.assign(a.num_vertices(), -1);
    iso_.edge.assign(a.num_edges(), DirEdge{-1});
    used_v_.assign(b.num_vertices(), false);
    used_e_.assign(b.num_edges(), false);
    // edges in BFS order so each edge after a component's first touches a mapped vertex
    std::vector<bool> seen_v(a.num_vertices(), false), seen_e(a.num_edges(), false);
    for (int s = 0; s < a.num_vertices(); ++s) {
      if (seen_v[s]) continue;
      std::queue<int> q;
      q.push(s);
      seen_v[s] = true;
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (DirEdge d : a.star(v)) {
          if (!seen_e[d.edge()]) {
            seen_e[d.edge()] = true;
            order_.push_back(d.edge());
          }
          int w = a.terminus(d);
          if (!seen_v[w]) {
            seen_v[w] = true;
            q.push(w);
          }
        }
      }
    }
  }

  bool pin(int va, int vb) {
    if (a_.valence(va) != b_.valence(vb)) return false;
    iso_.vertex[va] = vb;
    used_v_[vb] = true;
    return true;
  }

  void run() { search(0); }

 private:
  bool try_vertex(int va, int vb, std::vector<int>& assigned) {
    if (iso_.vertex[va] >= 0) return iso_.vertex[va] == vb;
    if (used_v_[vb] || a_.valence(va) != b_.valence(vb)) return false;
    iso_.vertex[va] = vb;
    used_v_[vb] = true;
    assigned.push_back(va);
    return true;
  }

  void undo(std::vector<int>& assigned) {
    for (int va : assigned) {
      used_v_[iso_.vertex[va]] = false;
      iso_.vertex[va] = -1;
    }
    assigned.clear();
  }

  // returns false to stop
  bool search(std::size_t k) {
    if (k == order_.size()) {
      // isolated vertices (edgeless graphs) pair up in order
      std::vector<int> assigned;
      int next = 0;
      for (int va = 0; va < a_.num_vertices(); ++va) {
        if (iso_.vertex[va] >= 0) continue;
        while (next < b_.num_vertices() && used_v_[next]) ++next;
        if (next == b_.num_vertices()) {
          undo(assigned);
          return true;
        }
        try_vertex(va, next, assigned);
      }
      bool go = visit_(iso_);
      undo(assigned);
      return go;
    }
    int e = order_[k];
    int o = a_.origin(e), t = a_.terminus(e);
    std::vector<DirEdge> cands;
    if (iso_.vertex[o] >= 0) {
      cands = b_.star(iso_.vertex[o]);
    } else if (iso_.vertex[t] >= 0) {
      for (DirEdge d : b_.star(iso_.vertex[t])) cands.push_back(d.reverse());
    } else {
      for (int f = 0; f < b_.num_edges(); ++f) {
        cands.push_back(DirEdge::forward(f));
        cands.push_back(DirEdge::backward(f));
      }
    }
    for (DirEdge d : cands) {
      if (used_e_[d.edge()]) continue;
      if (compat_ && !compat_(DirEdge::forward(e), d)) continue;
      std::vector<int> assigned;
      if (!try_vertex(o, b_.origin(d), assigned) || !try_vertex(t, b_.terminus(d), assigned)) {
        undo(assigned);
        continue;
      }
      used_e_[d.edge()] = true;
      iso_.edge[e] = d;
      bool go = search(k + 1);
      used_e_[d.edge()] = false;
      iso_.edge[e] = DirEdge{-1};
      undo(assigned);
      if (!go) return false;
    }
    return true;
  }

  const Graph& a_;
  const Graph& b_;
  const std::function<bool(const GraphIso&)>& visit_;
  const EdgeCompat& compat_;
  GraphIso iso_;
  std::vector<bool> used_v_, used_e_;
  std::vector<int> order_;
};

}  // namespace

void for_each_isomorphism(const Graph& a, const Graph& b, const std::function<bool(const GraphIso&)>& visit,
                          const EdgeCompat& compat, std::optional<std::pair<int, int>> pinned) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return;
  std::vector<int> va, vb;
  for (int v = 0; v < a.num_vertices(); ++v) va.push_back(a.valence(v));
  for (int v = 0; v < b.num_vertices(); ++v) vb.push_back(b.valence(v));
  std::sort(va.begin(), va.end());
  std::sort(vb.begin(), vb.end());
  if (va != vb) return;
  IsoSearch s(a, b, visit, compat);
  if (pinned && !s.pin(pinned->first, pinned->second)) return;
  s.run();
}

std::optional<GraphIso> find_isomorphism(const Graph& a, const Graph& b, const EdgeCompat& compat,
                                         std::optional<std::pair<int, int>> pinned) {
  std::optional<GraphIso> out;
  for_each_isomorphism(
      a, b,
      [&](const GraphIso& iso) {
        out = iso;
        return false;
      },
      compat, pinned);
  return out;
}

}  // namespace outspace
