#include "outspace/spine.hpp"

#include <algorithm>
#include <sstream>

#include "outspace/error.hpp"
#include "outspace/text_format.hpp"

namespace outspace {

std::size_t VertexSet::KeyHash::operator()(const std::vector<int>& k) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int x : k) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

int VertexSet::find(const MarkedGraph& v) const { return find(v, invariant_key(v)); }

int VertexSet::find(const MarkedGraph& v, const std::vector<int>& key) const {
  auto it = buckets_.find(key);
  if (it == buckets_.end()) return -1;
  for (int i : it->second)
    if (equivalent(items_[i], v)) return i;
  return -1;
}

std::pair<int, bool> VertexSet::insert(const MarkedGraph& v) { return insert(v, invariant_key(v)); }

std::pair<int, bool> VertexSet::insert(const MarkedGraph& v, const std::vector<int>& key) {
  int i = find(v, key);
  if (i >= 0) return {i, false};
  items_.push_back(v);
  buckets_[key].push_back(size() - 1);
  return {size() - 1, true};
}

std::vector<Neighbor> collapse_neighbors(const MarkedGraph& v) {
  std::vector<Neighbor> out;
  VertexSet seen;
  for (const auto& f : enumerate_natural_subforests(v.graph(), false)) {
    MarkedGraph c = collapse_marked(v, f);
    if (seen.insert(c).second) out.push_back(Neighbor{std::move(c), SpineStep{true, f}});
  }
  return out;
}

std::vector<Neighbor> expansion_neighbors(const MarkedGraph& v) {
  std::vector<Neighbor> out;
  VertexSet seen;
  // (graph, forest of new edges) layers of iterated single blow-ups
  std::vector<Neighbor> layer{Neighbor{v, SpineStep{false, {}}}};
  while (!layer.empty()) {
    std::vector<Neighbor> next;
    for (const auto& item : layer)
      for (const auto& b : enumerate_blowups(item.vertex.graph())) {
        MarkedGraph x = lift_blowup(item.vertex, b);
        if (!seen.insert(x).second) continue;
        SpineStep s{false, item.step.forest};
        s.forest.push_back(b.new_edge);
        out.push_back(Neighbor{x, s});
        next.push_back(Neighbor{std::move(x), std::move(s)});
      }
    layer = std::move(next);
  }
  return out;
}

std::vector<Neighbor> neighbors(const MarkedGraph& v) {
  auto out = collapse_neighbors(v);
  auto up = expansion_neighbors(v);
  out.insert(out.end(), std::make_move_iterator(up.begin()), std::make_move_iterator(up.end()));
  return out;
}

bool verify_step(const MarkedGraph& from, const MarkedGraph& to, const SpineStep& s) {
  if (s.forest.empty()) return false;
  const MarkedGraph& big = s.collapse ? from : to;
  const MarkedGraph& small = s.collapse ? to : from;
  if (!is_forest(big.graph(), s.forest)) return false;
  return equivalent(collapse_marked(big, s.forest), small).has_value();
}

bool SpinePath::verify() const {
  if (vertices.size() != steps.size() + 1) return false;
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (!verify_step(vertices[i], vertices[i + 1], steps[i])) return false;
  return true;
}

std::string SpinePath::dump() const {
  std::ostringstream out;
  out << "# length " << length() << (guarded ? ", guarded" : "") << "\n";
  if (!note.empty()) out << "# " << note << "\n";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    out << "vertex " << i << "\n" << format_marked(vertices[i]) << "\n";
    if (i < steps.size()) {
      out << "certificate " << i << " " << i + 1 << ": " << (steps[i].collapse ? "collapse" : "expand");
      for (int e : steps[i].forest) out << " " << e + 1;
      out << "\n";
    }
  }
  return out.str();
}

namespace {

struct BfsResult {
  std::optional<int> distance;
  std::optional<SpinePath> path;
  long long visited = 0;
};

BfsResult bfs(const MarkedGraph& u, const MarkedGraph* target, int cap, const VertexFilter& keep, bool parallel,
              bool want_path) {
  require(cap >= 0, "bfs: cap must be >= 0");
  BfsResult r;
  VertexSet seen;
  std::vector<int> parent{-1};
  std::vector<SpineStep> via{SpineStep{}};
  seen.insert(u);
  std::vector<int> tkey;
  if (target) tkey = invariant_key(*target);

  auto finish = [&](int idx, int d) {
    r.distance = d;
    if (!want_path) return;
    std::vector<int> chain;
    for (int i = idx; i >= 0; i = parent[i]) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    SpinePath p;
    for (std::size_t k = 0; k < chain.size(); ++k) {
      p.vertices.push_back(seen.at(chain[k]));
      if (k) p.steps.push_back(via[chain[k]]);
    }
    r.path = std::move(p);
  };

  if (target && tkey == invariant_key(u) && equivalent(u, *target)) {
    finish(0, 0);
    return r;
  }
  std::vector<int> frontier{0};
  for (int d = 1; d <= cap && !frontier.empty(); ++d) {
    std::vector<std::vector<Neighbor>> nb(frontier.size());
    std::vector<std::vector<std::vector<int>>> keys(frontier.size());
    const long F = static_cast<long>(frontier.size());
    auto expand = [&](long i) {
      auto all = neighbors(seen.at(frontier[i]));
      for (auto& x : all) {
        if (keep && !keep(x.vertex)) continue;
        keys[i].push_back(invariant_key(x.vertex));
        nb[i].push_back(std::move(x));
      }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
      for (long i = 0; i < F; ++i) expand(i);
    } else {
      for (long i = 0; i < F; ++i) expand(i);
    }
    // merge in frontier order so the result does not depend on scheduling
    std::vector<int> next;
    for (long i = 0; i < F; ++i)
      for (std::size_t j = 0; j < nb[i].size(); ++j) {
        auto [idx, fresh] = seen.insert(nb[i][j].vertex, keys[i][j]);
        if (!fresh) continue;
        parent.push_back(frontier[i]);
        via.push_back(nb[i][j].step);
        next.push_back(idx);
        if (target && keys[i][j] == tkey && equivalent(nb[i][j].vertex, *target)) {
          finish(idx, d);
          r.visited = seen.size();
          return r;
        }
      }
    frontier = std::move(next);
  }
  r.visited = seen.size();
  return r;
}

}  // namespace

std::optional<int> bfs_distance(const MarkedGraph& u, const MarkedGraph& v, int cap, const VertexFilter& keep) {
  return bfs(u, &v, cap, keep, true, false).distance;
}

std::optional<int> bfs_distance_serial(const MarkedGraph& u, const MarkedGraph& v, int cap, const VertexFilter& keep) {
  return bfs(u, &v, cap, keep, false, false).distance;
}

std::optional<SpinePath> bfs_path(const MarkedGraph& u, const MarkedGraph& v, int cap, const VertexFilter& keep) {
  return bfs(u, &v, cap, keep, true, true).path;
}

long long ball_size(const MarkedGraph& u, int radius, bool parallel) {
  return bfs(u, nullptr, radius, {}, parallel, false).visited;
}

std::optional<SpinePath> short_link(const MarkedGraph& u, const MarkedGraph& v, int cap, const VertexFilter& keep) {
  SpinePath p;
  p.vertices.push_back(u);
  if (equivalent(u, v)) return p;
  auto one = [&](const MarkedGraph& mid, SpineStep s) {
    p.vertices.push_back(mid);
    p.steps.push_back(std::move(s));
  };
  auto cu = collapse_neighbors(u);
  for (const auto& x : cu)
    if (equivalent(x.vertex, v)) {
      one(v, x.step);
      return p;
    }
  auto cv = collapse_neighbors(v);
  for (const auto& y : cv)
    if (equivalent(y.vertex, u)) {
      one(v, SpineStep{false, y.step.forest});
      return p;
    }
  // collapse then expand
  for (const auto& x : cu) {
    if (keep && !keep(x.vertex)) continue;
    for (const auto& y : cv)
      if (equivalent(x.vertex, y.vertex)) {
        one(x.vertex, x.step);
        one(v, SpineStep{false, y.step.forest});
        return p;
      }
  }
  // expand then collapse
  for (const auto& x : expansion_neighbors(u)) {
    if (keep && !keep(x.vertex)) continue;
    if (x.vertex.graph().num_vertices() <= v.graph().num_vertices()) continue;
    for (const auto& f : enumerate_natural_subforests(x.vertex.graph(), false))
      if (equivalent(collapse_marked(x.vertex, f), v)) {
        one(x.vertex, x.step);
        one(v, SpineStep{true, f});
        return p;
      }
  }
  if (cap <= 2) return std::nullopt;
  return bfs_path(u, v, cap, keep);
}

namespace {

// Working graph for folding: edges carry the directed edge of G' they map to.
struct FoldWork {
  std::vector<int> org, ter;
  std::vector<DirEdge> lab;
  std::vector<bool> alive;
  int nv = 0;
  int base = 0;
  std::vector<std::vector<DirEdge>> marking;

  int origin(DirEdge d) const { return d.reversed() ? ter[d.edge()] : org[d.edge()]; }
  int terminus(DirEdge d) const { return d.reversed() ? org[d.edge()] : ter[d.edge()]; }
  DirEdge label(DirEdge d) const { return d.reversed() ? lab[d.edge()].reverse() : lab[d.edge()]; }

  int add_edge(int o, int t, DirEdge l) {
    org.push_back(o);
    ter.push_back(t);
    lab.push_back(l);
    alive.push_back(true);
    return static_cast<int>(org.size()) - 1;
  }

  std::vector<DirEdge> star(int v) const {
    std::vector<DirEdge> s;
    for (int e = 0; e < static_cast<int>(org.size()); ++e) {
      if (!alive[e]) continue;
      if (org[e] == v) s.push_back(DirEdge::forward(e));
      if (ter[e] == v) s.push_back(DirEdge::backward(e));
    }
    return s;
  }

  // first vertex with two directions of equal label
  std::optional<std::pair<DirEdge, DirEdge>> find_fold() const {
    for (int v = 0; v < nv; ++v) {
      auto s = star(v);
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
          if (label(s[i]) == label(s[j]) && s[i].edge() != s[j].edge()) return std::make_pair(s[i], s[j]);
    }
    return std::nullopt;
  }

  // fold d2 onto d1; returns the merged terminus
  int fold(DirEdge d1, DirEdge d2) {
    int t1 = terminus(d1), t2 = terminus(d2);
    if (t1 == t2) violated("fold_path: fold identifies a loop (map is not a homotopy equivalence)");
    int keep = std::min(t1, t2), gone = std::max(t1, t2);
    alive[d2.edge()] = false;
    for (std::size_t e = 0; e < org.size(); ++e) {
      if (org[e] == gone) org[e] = keep;
      if (ter[e] == gone) ter[e] = keep;
    }
    if (base == gone) base = keep;
    for (auto& p : marking) {
      std::vector<DirEdge> q;
      for (DirEdge d : p) {
        if (d.edge() == d2.edge()) d = d2.reversed() == d.reversed() ? d1 : d1.reverse();
        push_reduced(q, d);
      }
      p = std::move(q);
    }
    return keep;
  }

  // the other direction at a valence-2 vertex entered along `in`; code -1 if none
  DirEdge continue_from(DirEdge in) const {
    int t = terminus(in);
    auto s = star(t);
    if (s.size() != 2 || t == origin(in)) return DirEdge{-1};
    return s[0] == in.reverse() ? s[1] : s[0];
  }

  // fold maximal initial segments starting with d1, d2
  void maximal_fold(DirEdge d1, DirEdge d2) {
    for (;;) {
      DirEdge n1 = continue_from(d1), n2 = continue_from(d2);
      fold(d1, d2);
      if (n1.code < 0 || n2.code < 0 || n1.edge() == n2.edge() || !alive[n1.edge()] || !alive[n2.edge()]) return;
      if (label(n1) != label(n2) || origin(n1) != origin(n2)) return;
      d1 = n1;
      d2 = n2;
    }
  }

  // current stage as a natural marked graph
  MarkedGraph stage() const {
    const int E = static_cast<int>(org.size());
    std::vector<bool> live = alive;
    std::vector<int> val(nv, 0);
    for (int e = 0; e < E; ++e)
      if (live[e]) {
        ++val[org[e]];
        ++val[ter[e]];
      }
    for (bool changed = true; changed;) {
      changed = false;
      for (int e = 0; e < E; ++e)
        if (live[e] && org[e] != ter[e] && (val[org[e]] == 1 || val[ter[e]] == 1)) {
          live[e] = false;
          --val[org[e]];
          --val[ter[e]];
          changed = true;
        }
    }
    // strip the hanging arc from the basepoint, if any
    std::vector<std::vector<DirEdge>> m = marking;
    std::size_t lead = 0;
    while (lead < m[0].size() && !live[m[0][lead].edge()]) ++lead;
    int b = base;
    if (lead > 0) {
      b = terminus(m[0][lead - 1]);
      for (auto& p : m) {
        for (std::size_t i = 0; i < lead; ++i)
          if (p.size() < 2 * lead || p[i] != m[0][i] || p[p.size() - 1 - i] != m[0][i].reverse())
            violated("fold_path: marking leaves the core off the basepoint arc");
      }
      for (auto& p : m) p = std::vector<DirEdge>(p.begin() + lead, p.end() - lead);
    }
    Graph g;
    std::vector<int> vid(nv, -1), eid(E, -1);
    for (int e = 0; e < E; ++e)
      if (live[e])
        for (int x : {org[e], ter[e]})
          if (vid[x] < 0) vid[x] = g.add_vertex("v" + std::to_string(g.num_vertices()));
    for (int e = 0; e < E; ++e)
      if (live[e]) eid[e] = g.add_edge(vid[org[e]], vid[ter[e]], "e" + std::to_string(g.num_edges() + 1));
    std::vector<EdgePath> paths;
    for (const auto& p : m) {
      EdgePath q{vid[b], {}};
      for (DirEdge d : p) {
        if (eid[d.edge()] < 0) violated("fold_path: marking crosses a pruned edge");
        q.edges.push_back(d.reversed() ? DirEdge::backward(eid[d.edge()]) : DirEdge::forward(eid[d.edge()]));
      }
      paths.push_back(std::move(q));
    }
    return MarkedGraph(g, vid[b], std::move(paths)).normalized();
  }
};

// realizing subrose edges of the first component, when F has one component carried by loops at one vertex
std::optional<std::vector<int>> rose_component(const MarkedGraph& G, const FreeFactorSystem& F) {
  if (F.components.size() != 1) return std::nullopt;
  auto w = realizes(G, F);
  if (!w) return std::nullopt;
  const Graph& g = G.graph();
  const auto& es = w->components[0];
  int v = g.origin(es[0]);
  for (int e : es)
    if (g.origin(e) != v || g.terminus(e) != v) return std::nullopt;
  return es;
}

}  // namespace

SpinePath fold_path(const MarkedGraph& G, const MarkedGraph& Gp, const FreeFactorSystem* F) {
  require(G.rank() == Gp.rank(), "fold_path: rank mismatch");
  const int n = G.rank();
  SpinePath path;
  path.vertices.push_back(G);
  MarkedGraph R = G;
  if (G.graph().num_vertices() > 1) {
    auto parent = spanning_tree(G.graph(), G.base());
    std::vector<int> tree;
    for (int v = 0; v < G.graph().num_vertices(); ++v)
      if (v != G.base()) tree.push_back(parent[v].edge());
    std::sort(tree.begin(), tree.end());
    R = collapse_marked(G, tree);
    path.vertices.push_back(R);
    path.steps.push_back(SpineStep{true, tree});
  }

  // images of the petals of R in G', conjugated by tau (a path from the base of G' to the attach vertex)
  std::vector<Word> petal(n);
  for (int j = 0; j < n; ++j) petal[j] = R.decode(EdgePath{R.base(), {DirEdge::forward(j)}});
  std::vector<DirEdge> tau;
  bool prepared = false;
  std::string note;
  if (F) {
    auto H = rose_component(R, *F);
    auto Hp = rose_component(Gp, *F);
    if (!H || !Hp) {
      note = "preparation failed: both ends need the system carried by a subrose";
    } else {
      // tau from the first H petal: expand(x) = tau eps tau^-1
      auto P = reduced(Gp.expand(petal[(*H)[0]])).edges;
      std::size_t lo = 0, hi = P.size();
      while (hi - lo >= 2 && P[lo] == P[hi - 1].reverse()) ++lo, --hi;
      tau.assign(P.begin(), P.begin() + lo);
      std::vector<int> used;
      prepared = true;
      for (int j : *H) {
        std::vector<DirEdge> q;
        for (auto it = tau.rbegin(); it != tau.rend(); ++it) push_reduced(q, it->reverse());
        for (DirEdge d : Gp.expand(petal[j]).edges) push_reduced(q, d);
        for (DirEdge d : tau) push_reduced(q, d);
        if (q.size() != 1 || std::find(Hp->begin(), Hp->end(), q[0].edge()) == Hp->end() ||
            std::find(used.begin(), used.end(), q[0].edge()) != used.end()) {
          prepared = false;
          break;
        }
        used.push_back(q[0].edge());
      }
      if (!prepared) {
        tau.clear();
        note = "preparation failed: subrose petals do not map onto single petals";
      }
    }
  }

  FoldWork fw;
  fw.nv = 1;
  fw.base = 0;
  std::vector<std::vector<DirEdge>> sub(n);
  for (int j = 0; j < n; ++j) {
    std::vector<DirEdge> q;
    for (auto it = tau.rbegin(); it != tau.rend(); ++it) push_reduced(q, it->reverse());
    for (DirEdge d : Gp.expand(petal[j]).edges) push_reduced(q, d);
    for (DirEdge d : tau) push_reduced(q, d);
    if (q.empty()) violated("fold_path: a petal maps to a trivial loop");
    int prev = 0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      int next = k + 1 == q.size() ? 0 : fw.nv++;
      sub[j].push_back(DirEdge::forward(fw.add_edge(prev, next, q[k])));
      prev = next;
    }
  }
  for (const auto& p : R.marking()) {
    std::vector<DirEdge> q;
    for (DirEdge d : p.edges) {
      const auto& s = sub[d.edge()];
      if (!d.reversed())
        for (DirEdge x : s) push_reduced(q, x);
      else
        for (auto it = s.rbegin(); it != s.rend(); ++it) push_reduced(q, it->reverse());
    }
    fw.marking.push_back(std::move(q));
  }

  std::vector<MarkedGraph> stages{R};
  while (auto pr = fw.find_fold()) {
    fw.maximal_fold(pr->first, pr->second);
    MarkedGraph s = fw.stage();
    if (!equivalent(s, stages.back())) stages.push_back(std::move(s));
  }
  if (!equivalent(stages.back(), Gp)) violated("fold_path: folding did not reach the target");
  stages.back() = Gp;

  VertexFilter keep;
  if (F && prepared) keep = [F](const MarkedGraph& x) { return realizes(x, *F).has_value(); };
  for (std::size_t i = 1; i < stages.size(); ++i) {
    auto link = short_link(path.vertices.back(), stages[i], 4, keep);
    if (!link && keep) {
      note = "guarded link not found; unguarded link used";
      link = short_link(path.vertices.back(), stages[i], 4);
    }
    if (!link) violated("fold_path: consecutive fold stages are not joined by a short path");
    for (std::size_t k = 0; k < link->steps.size(); ++k) {
      path.steps.push_back(link->steps[k]);
      path.vertices.push_back(link->vertices[k + 1]);
    }
  }
  if (path.vertices.size() > 1 && equivalent(path.vertices.back(), Gp)) path.vertices.back() = Gp;
  if (F && prepared) {
    path.guarded = std::all_of(path.vertices.begin(), path.vertices.end(),
                               [&](const MarkedGraph& x) { return realizes(x, *F).has_value(); });
    if (!path.guarded && note.empty()) note = "a path vertex does not realize the system";
  }
  path.note = note;
  return path;
}

}  // namespace outspace
