#include "outspace/covers.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "outspace/error.hpp"
#include "outspace/fold.hpp"

namespace outspace {

std::optional<DirEdge> SubgroupGraph::step(int v, DirEdge ambient) const {
  for (DirEdge d : graph.star(v))
    if (label_of(d) == ambient) return d;
  return std::nullopt;
}

namespace {

DirEdge signed_to_dir(int se) { return se > 0 ? DirEdge::forward(se - 1) : DirEdge::backward(-se - 1); }

}  // namespace

SubgroupGraph stallings_core(std::span<const Word> gens, const MarkedGraph& G, bool based) {
  const Graph& amb = G.graph();
  FoldGraph fg;
  int b0 = fg.add_vertex(G.base());
  fg.set_base(b0);
  std::vector<EdgePath> paths;
  bool any = false;
  for (const Word& w : gens) {
    paths.push_back(G.expand(w));
    const auto& es = paths.back().edges;
    if (es.empty()) continue;
    any = true;
    int prev = b0;
    for (std::size_t k = 0; k < es.size(); ++k) {
      int next = k + 1 == es.size() ? b0 : fg.add_vertex(amb.terminus(es[k]));
      fg.add_edge(prev, next, es[k].label());
      prev = next;
    }
  }
  if (!any) fail("stallings_core: trivial subgroup");
  FoldedGraph F = std::move(fg).fold();

  // generator loops in F as signed edge sequences
  std::vector<std::vector<int>> loops;
  for (const auto& p : paths) {
    std::vector<int> seq;
    int at = F.base;
    for (DirEdge d : p.edges) {
      auto se = F.step(at, d.label());
      if (!se) violated("folded graph does not carry a generator loop");
      seq.push_back(*se);
      at = F.endpoint(*se);
    }
    loops.push_back(std::move(seq));
  }

  const int V = F.num_vertices();
  const int E = static_cast<int>(F.edges.size());
  std::vector<bool> alive(E, true);
  std::vector<int> deg(V, 0);
  for (const auto& e : F.edges) {
    ++deg[e.from];
    ++deg[e.to];
  }
  std::vector<std::vector<int>> inc(V);
  for (int i = 0; i < E; ++i) {
    inc[F.edges[i].from].push_back(i);
    if (F.edges[i].to != F.edges[i].from) inc[F.edges[i].to].push_back(i);
  }
  std::queue<int> q;
  for (int v = 0; v < V; ++v)
    if (deg[v] == 1 && !(based && v == F.base)) q.push(v);
  auto prune_from = [&](int v) {
    for (int i : inc[v]) {
      if (!alive[i]) continue;
      alive[i] = false;
      int w = F.edges[i].from == v ? F.edges[i].to : F.edges[i].from;
      --deg[v];
      --deg[w];
      return w;
    }
    return -1;
  };
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (deg[v] != 1) continue;
    int w = prune_from(v);
    if (w >= 0 && deg[w] == 1 && !(based && w == F.base)) q.push(w);
  }
  int q_vertex = F.base;
  std::vector<int> tail_se;  // signed F-edges from F.base to q
  if (based) {
    while (deg[q_vertex] == 1) {
      int e = -1;
      for (int i : inc[q_vertex])
        if (alive[i]) e = i;
      int se = F.edges[e].from == q_vertex ? e + 1 : -(e + 1);
      tail_se.push_back(se);
      int w = prune_from(q_vertex);
      q_vertex = w;
    }
  }

  SubgroupGraph out;
  std::vector<int> vid(V, -1), eid(E, -1);
  for (int v = 0; v < V; ++v)
    if (deg[v] > 0 || (based && v == q_vertex)) {
      vid[v] = out.graph.add_vertex();
      out.vertex_image.push_back(F.vertex_image[v]);
    }
  for (int i = 0; i < E; ++i)
    if (alive[i]) {
      eid[i] = out.graph.add_edge(vid[F.edges[i].from], vid[F.edges[i].to]);
      out.label.push_back(DirEdge::from_label(F.edges[i].label));
    }
  if (out.graph.num_edges() == 0) violated("stallings_core: empty core for a nontrivial subgroup");
  if (!based) return out;

  out.base = vid[q_vertex];
  for (int se : tail_se) {
    DirEdge d = signed_to_dir(se);
    out.tail.push_back(d.reversed() ? DirEdge::from_label(F.edges[d.edge()].label).reverse()
                                    : DirEdge::from_label(F.edges[d.edge()].label));
  }
  for (const auto& seq : loops) {
    std::vector<DirEdge> acc;
    for (auto it = tail_se.rbegin(); it != tail_se.rend(); ++it) push_reduced(acc, signed_to_dir(*it).reverse());
    for (int se : seq) push_reduced(acc, signed_to_dir(se));
    for (int se : tail_se) push_reduced(acc, signed_to_dir(se));
    EdgePath p{out.base, {}};
    for (DirEdge d : acc) {
      if (eid[d.edge()] < 0) violated("generator loop leaves the core after tail conjugation");
      p.edges.push_back(d.reversed() ? DirEdge::backward(eid[d.edge()]) : DirEdge::forward(eid[d.edge()]));
    }
    out.loops.push_back(std::move(p));
  }
  return out;
}

SubgroupGraph induced_subgraph(const Graph& g, std::span<const int> edges) {
  SubgroupGraph s;
  std::vector<int> vid(g.num_vertices(), -1);
  auto vtx = [&](int v) {
    if (vid[v] < 0) {
      vid[v] = s.graph.add_vertex();
      s.vertex_image.push_back(v);
    }
    return vid[v];
  };
  for (int e : edges) {
    int o = vtx(g.origin(e)), t = vtx(g.terminus(e));
    s.graph.add_edge(o, t);
    s.label.push_back(DirEdge::forward(e));
  }
  return s;
}

std::optional<GraphIso> labeled_isomorphism(const SubgroupGraph& a, const SubgroupGraph& b) {
  return find_isomorphism(a.graph, b.graph, [&](DirEdge ea, DirEdge db) { return a.label_of(ea) == b.label_of(db); });
}

bool subgroups_conjugate(const SubgroupGraph& a, const SubgroupGraph& b) {
  return labeled_isomorphism(a, b).has_value();
}

bool maps_into(const SubgroupGraph& a, const SubgroupGraph& b) {
  if (a.graph.num_vertices() == 0) return true;
  for (int w = 0; w < b.graph.num_vertices(); ++w) {
    if (b.vertex_image[w] != a.vertex_image[0]) continue;
    std::vector<int> img(a.graph.num_vertices(), -1);
    img[0] = w;
    std::queue<int> q;
    q.push(0);
    bool ok = true;
    while (!q.empty() && ok) {
      int v = q.front();
      q.pop();
      for (DirEdge d : a.graph.star(v)) {
        auto m = b.step(img[v], a.label_of(d));
        if (!m) {
          ok = false;
          break;
        }
        int t = a.graph.terminus(d), tb = b.graph.terminus(*m);
        if (img[t] < 0) {
          img[t] = tb;
          q.push(t);
        } else if (img[t] != tb) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return true;
  }
  return false;
}

bool minimal_subtree_collapse_check(const MarkedGraph& G, std::span<const int> forest, std::span<const Word> gens) {
  CollapseMap cm;
  MarkedGraph Gp = collapse_marked(G, forest, cm);
  SubgroupGraph left = stallings_core(gens, Gp, false);
  SubgroupGraph K = stallings_core(gens, G, false);
  std::vector<bool> in_forest(G.graph().num_edges(), false);
  for (int e : forest) in_forest[e] = true;
  std::vector<int> kf;
  for (int e = 0; e < K.graph.num_edges(); ++e)
    if (in_forest[K.label[e].edge()]) kf.push_back(e);
  CollapseMap km = collapse(K.graph, kf);
  SubgroupGraph right;
  right.graph = km.target;
  right.vertex_image.assign(km.target.num_vertices(), -1);
  for (int v = 0; v < K.graph.num_vertices(); ++v) right.vertex_image[km.vertex_map[v]] = cm.vertex_map[K.vertex_image[v]];
  right.label.assign(km.target.num_edges(), DirEdge{});
  for (int e = 0; e < K.graph.num_edges(); ++e)
    if (km.edge_map[e] >= 0) right.label[km.edge_map[e]] = *cm.image(K.label[e]);
  return labeled_isomorphism(left, right).has_value();
}

FreeFactorSystem FreeFactorSystem::parse(int n, std::string_view text) {
  FreeFactorSystem F;
  if (n <= 0) n = max_letter_index(text);
  F.rank = n;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find('|', pos);
    auto part = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    auto gens = parse_word_list(n, part);
    if (!gens.empty()) F.components.push_back(std::move(gens));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  require(!F.components.empty(), "free factor system has no components");
  return F;
}

std::string FreeFactorSystem::str() const {
  std::string s;
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (k) s += " | ";
    for (std::size_t i = 0; i < components[k].size(); ++i) {
      if (i) s += ", ";
      s += components[k][i].str();
    }
  }
  return s;
}

int coindex(const FreeFactorSystem& F) {
  require(F.rank >= 1 && !F.components.empty(), "malformed free factor system");
  MarkedGraph R = MarkedGraph::rose(F.rank);
  int sum = 0;
  for (const auto& comp : F.components) {
    int r = stallings_core(comp, R).rank();
    require(r >= 1, "free factor system component of rank 0");
    sum += r - 1;
  }
  int c = (F.rank - 1) - sum;
  require(c >= 0, "malformed free factor system: ranks too large");
  return c;
}

bool ffs_partial_order(const FreeFactorSystem& F, const FreeFactorSystem& Fp) {
  require(F.rank == Fp.rank, "free factor systems over different ranks");
  MarkedGraph R = MarkedGraph::rose(F.rank);
  std::vector<SubgroupGraph> big;
  for (const auto& c : Fp.components) big.push_back(stallings_core(c, R));
  for (const auto& c : F.components) {
    SubgroupGraph s = stallings_core(c, R);
    if (!std::any_of(big.begin(), big.end(), [&](const SubgroupGraph& b) { return maps_into(s, b); })) return false;
  }
  return true;
}

bool ffs_equal(const FreeFactorSystem& F, const FreeFactorSystem& Fp) {
  if (F.rank != Fp.rank || F.components.size() != Fp.components.size()) return false;
  MarkedGraph R = MarkedGraph::rose(F.rank);
  std::vector<SubgroupGraph> a, b;
  for (const auto& c : F.components) a.push_back(stallings_core(c, R));
  for (const auto& c : Fp.components) b.push_back(stallings_core(c, R));
  std::vector<bool> used(b.size(), false);
  for (const auto& s : a) {
    bool hit = false;
    for (std::size_t j = 0; j < b.size() && !hit; ++j)
      if (!used[j] && subgroups_conjugate(s, b[j])) used[j] = hit = true;
    if (!hit) return false;
  }
  return true;
}

void for_each_realization(const MarkedGraph& G, const FreeFactorSystem& F,
                          const std::function<bool(const CoreSubgraphWitness&)>& visit) {
  require(F.rank == G.rank(), "realizes: rank mismatch");
  const Graph& g = G.graph();
  const int E = g.num_edges();
  require(E < 24, "realizes: graph too large");
  std::vector<SubgroupGraph> cores;
  for (const auto& c : F.components) cores.push_back(stallings_core(c, G));
  const std::size_t K = cores.size();
  for (std::uint32_t mask = 1; mask < (1u << E); ++mask) {
    std::vector<int> val(g.num_vertices(), 0);
    std::vector<int> es;
    for (int e = 0; e < E; ++e)
      if (mask >> e & 1) {
        es.push_back(e);
        ++val[g.origin(e)];
        ++val[g.terminus(e)];
      }
    if (std::any_of(val.begin(), val.end(), [](int x) { return x == 1; })) continue;
    // components by union-find over touched vertices
    std::vector<int> p(g.num_vertices());
    std::iota(p.begin(), p.end(), 0);
    std::function<int(int)> find = [&](int x) { return p[x] == x ? x : p[x] = find(p[x]); };
    for (int e : es) p[find(g.origin(e))] = find(g.terminus(e));
    std::vector<int> roots;
    std::vector<std::vector<int>> comps;
    for (int e : es) {
      int r = find(g.origin(e));
      auto it = std::find(roots.begin(), roots.end(), r);
      if (it == roots.end()) {
        roots.push_back(r);
        comps.push_back({e});
      } else {
        comps[it - roots.begin()].push_back(e);
      }
    }
    if (comps.size() != K) continue;
    std::vector<SubgroupGraph> sub;
    for (const auto& c : comps) sub.push_back(induced_subgraph(g, c));
    // match components to cores
    std::vector<int> assign(K, -1);
    std::vector<bool> used(K, false);
    std::function<bool(std::size_t)> match = [&](std::size_t k) {
      if (k == K) return true;
      for (std::size_t j = 0; j < K; ++j) {
        if (used[j] || sub[j].rank() != cores[k].rank()) continue;
        if (!subgroups_conjugate(sub[j], cores[k])) continue;
        used[j] = true;
        assign[k] = static_cast<int>(j);
        if (match(k + 1)) return true;
        used[j] = false;
      }
      return false;
    };
    if (!match(0)) continue;
    CoreSubgraphWitness w;
    w.edges = es;
    for (std::size_t k = 0; k < K; ++k) w.components.push_back(comps[assign[k]]);
    if (!visit(w)) return;
  }
}

std::optional<CoreSubgraphWitness> realizes(const MarkedGraph& G, const FreeFactorSystem& F) {
  std::optional<CoreSubgraphWitness> out;
  for_each_realization(G, F, [&](const CoreSubgraphWitness& w) {
    out = w;
    return false;
  });
  return out;
}

std::vector<Word> subgraph_generators(const MarkedGraph& G, std::span<const int> edges) {
  const Graph& g = G.graph();
  SubgroupGraph h = induced_subgraph(g, edges);
  require(h.graph.connected(), "subgraph is not connected");
  auto tree = spanning_tree(h.graph, 0);
  std::vector<bool> in_tree(h.graph.num_edges(), false);
  for (int v = 1; v < h.graph.num_vertices(); ++v) in_tree[tree[v].edge()] = true;
  EdgePath gamma = tree_path(g, G.decoder().tree, G.base(), G.base(), h.vertex_image[0]);
  EdgePath back = gamma.inverse(g);
  auto lift = [&](const EdgePath& p) {
    EdgePath q{h.vertex_image[p.start], {}};
    for (DirEdge d : p.edges) q.edges.push_back(h.label_of(d));
    return q;
  };
  std::vector<Word> gens;
  for (int e = 0; e < h.graph.num_edges(); ++e) {
    if (in_tree[e]) continue;
    EdgePath loop = tree_path(h.graph, tree, 0, 0, h.graph.origin(e));
    loop.edges.push_back(DirEdge::forward(e));
    EdgePath ret = tree_path(h.graph, tree, 0, h.graph.terminus(e), 0);
    loop.edges.insert(loop.edges.end(), ret.edges.begin(), ret.edges.end());
    gens.push_back(G.decode(concat(g, concat(g, gamma, lift(loop)), back)));
  }
  return gens;
}

FreeFactorSystem system_of(const MarkedGraph& G, const std::vector<std::vector<int>>& components) {
  FreeFactorSystem F;
  F.rank = G.rank();
  for (const auto& c : components) F.components.push_back(subgraph_generators(G, c));
  return F;
}

}  // namespace outspace
