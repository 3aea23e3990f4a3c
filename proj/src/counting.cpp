#include "outspace/counting.hpp"

#include <algorithm>
#include <atomic>

#include "outspace/error.hpp"

namespace outspace {

const char* shape_name(ComplementShape s) {
  switch (s) {
    case ComplementShape::bridge: return "bridge";
    case ComplementShape::touching_loop: return "touching-loop";
    case ComplementShape::detached_loop: return "detached-loop";
    case ComplementShape::two_component: return "two-component";
  }
  return "?";
}

namespace {

// Edges of K covered by the core of the A-image, traced from the basepoint of K.
std::vector<bool> image_core(const SubgroupGraph& K, const MarkedGraph& G, std::span<const Word> gens) {
  std::vector<bool> used(K.graph.num_edges(), false);
  std::vector<DirEdge> tail_inv;
  for (auto it = K.tail.rbegin(); it != K.tail.rend(); ++it) tail_inv.push_back(it->reverse());
  for (const Word& w : gens) {
    std::vector<DirEdge> path = tail_inv;
    for (DirEdge d : G.expand(w).edges) push_reduced(path, d);
    for (DirEdge d : K.tail) push_reduced(path, d);
    int at = K.base;
    for (DirEdge d : path) {
      auto s = K.step(at, d);
      if (!s) fail("A is not contained in B");
      used[s->edge()] = true;
      at = K.graph.terminus(*s);
    }
    if (at != K.base) violated("A-generator does not close up in the B-core");
  }
  // prune to the core of the traced subgraph
  std::vector<int> deg(K.graph.num_vertices(), 0);
  for (int e = 0; e < K.graph.num_edges(); ++e)
    if (used[e]) {
      ++deg[K.graph.origin(e)];
      ++deg[K.graph.terminus(e)];
    }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < K.graph.num_edges(); ++e) {
      if (!used[e]) continue;
      int o = K.graph.origin(e), t = K.graph.terminus(e);
      if (o != t && (deg[o] == 1 || deg[t] == 1)) {
        used[e] = false;
        --deg[o];
        --deg[t];
        changed = true;
      }
    }
  }
  return used;
}

int count_vertices(const Graph& g, const std::vector<bool>& edges) {
  std::vector<bool> v(g.num_vertices(), false);
  for (int e = 0; e < g.num_edges(); ++e)
    if (edges[e]) v[g.origin(e)] = v[g.terminus(e)] = true;
  return static_cast<int>(std::count(v.begin(), v.end(), true));
}

}  // namespace

CountingContext build_context(const FreeFactorSystem& A, std::span<const Word> B, const MarkedGraph& G) {
  require(A.components.size() == 1 || A.components.size() == 2, "A must have one or two components");
  require(A.rank == G.rank(), "rank mismatch");
  if (!realizes(G, A)) fail("G does not realize the system of A");
  CountingContext ctx;
  ctx.G = G;
  ctx.A = A;
  ctx.B.assign(B.begin(), B.end());
  ctx.K = stallings_core(B, G, true);
  const Graph& k = ctx.K.graph;
  const int KE = k.num_edges();
  ctx.in_KA.assign(KE, false);
  std::vector<std::vector<bool>> parts;
  int rank_sum = 0;
  for (const auto& comp : A.components) {
    auto part = image_core(ctx.K, G, comp);
    SubgroupGraph core_a = stallings_core(comp, G);
    int ne = static_cast<int>(std::count(part.begin(), part.end(), true));
    if (ne != core_a.graph.num_edges() || count_vertices(k, part) != core_a.graph.num_vertices())
      fail("K_A is not embedded in K");
    rank_sum += core_a.rank();
    parts.push_back(part);
  }
  std::vector<int> owner(k.num_vertices(), -1);
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (int e = 0; e < KE; ++e)
      if (parts[p][e]) {
        for (int v : {k.origin(e), k.terminus(e)}) {
          if (owner[v] >= 0 && owner[v] != static_cast<int>(p)) fail("K_A0 and K_A1 meet");
          owner[v] = static_cast<int>(p);
        }
        ctx.in_KA[e] = true;
      }
  if (A.components.size() == 1 && ctx.K.rank() != rank_sum + 1) fail("rank(B) must be rank(A) + 1");
  if (A.components.size() == 2 && ctx.K.rank() != rank_sum) fail("rank(B) must be rank(A0) + rank(A1)");

  // chains of complement edges between special vertices
  std::vector<bool> special(k.num_vertices(), false);
  for (int v = 0; v < k.num_vertices(); ++v) special[v] = owner[v] >= 0 || k.valence(v) != 2;
  std::vector<bool> used = ctx.in_KA;
  std::vector<std::vector<DirEdge>> chains;
  for (int v = 0; v < k.num_vertices(); ++v) {
    if (!special[v]) continue;
    for (DirEdge d0 : k.star(v)) {
      if (used[d0.edge()]) continue;
      std::vector<DirEdge> ch{d0};
      used[d0.edge()] = true;
      int at = k.terminus(d0);
      DirEdge last = d0;
      while (!special[at]) {
        DirEdge nx = k.star(at)[0] == last.reverse() ? k.star(at)[1] : k.star(at)[0];
        used[nx.edge()] = true;
        ch.push_back(nx);
        last = nx;
        at = k.terminus(nx);
      }
      chains.push_back(std::move(ch));
    }
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) violated("complement chain scan missed edges");
  auto start = [&](const std::vector<DirEdge>& c) { return k.origin(c.front()); };
  auto end = [&](const std::vector<DirEdge>& c) { return k.terminus(c.back()); };
  if (A.components.size() == 2) {
    if (chains.size() != 1 || owner[start(chains[0])] < 0 || owner[end(chains[0])] < 0 ||
        owner[start(chains[0])] == owner[end(chains[0])])
      fail("complement of K_A0 and K_A1 is not a single joining edge");
    ctx.E = chains[0];
    ctx.shape = ComplementShape::two_component;
  } else if (chains.size() == 1 && owner[start(chains[0])] >= 0 && owner[end(chains[0])] >= 0) {
    ctx.E = chains[0];
    ctx.shape = start(chains[0]) == end(chains[0]) ? ComplementShape::touching_loop : ComplementShape::bridge;
  } else if (chains.size() == 2) {
    int loop = -1;
    for (int i = 0; i < 2; ++i)
      if (start(chains[i]) == end(chains[i]) && owner[start(chains[i])] < 0) loop = i;
    if (loop < 0) fail("complement of K_A matches neither shape");
    const auto& conn = chains[1 - loop];
    int x = start(chains[loop]);
    bool joins = (start(conn) == x && owner[end(conn)] >= 0) || (end(conn) == x && owner[start(conn)] >= 0);
    if (!joins) fail("complement of K_A matches neither shape");
    ctx.E = chains[loop];
    ctx.shape = ComplementShape::detached_loop;
  } else {
    fail("complement of K_A matches neither shape");
  }

  const int codes = 2 * G.graph().num_edges();
  ctx.next.assign(static_cast<std::size_t>(k.num_vertices()) * codes, -1);
  for (int v = 0; v < k.num_vertices(); ++v)
    for (DirEdge d : k.star(v)) ctx.next[static_cast<std::size_t>(v) * codes + ctx.K.label_of(d).code] = d.code;
  return ctx;
}

namespace {

struct Trace {
  std::vector<DirEdge> circuit;
  std::vector<std::pair<int, std::size_t>> starts;
  std::size_t budget = 0;
};

Trace prepare(const CountingContext& ctx, const CyclicWord& c) {
  require(c.rank() == ctx.G.rank(), "rank mismatch");
  Trace t;
  t.circuit = circuit_of(ctx.G, c);
  const auto& C = t.circuit;
  const std::size_t L = C.size();
  const Graph& k = ctx.K.graph;
  const int codes = 2 * ctx.G.graph().num_edges();
  auto nxt = [&](int v, DirEdge d) { return ctx.next[static_cast<std::size_t>(v) * codes + d.code]; };
  // a closed lift means c is conjugate into B
  for (int v = 0; v < k.num_vertices(); ++v) {
    if (ctx.K.vertex_image[v] != ctx.G.graph().origin(C[0])) continue;
    int at = v;
    std::size_t s = 0;
    for (; s < L; ++s) {
      int code = nxt(at, C[s]);
      if (code < 0) break;
      at = k.terminus(DirEdge{code});
    }
    if (s == L && at == v) fail("c is conjugate into B; the count is undefined");
  }
  for (int v = 0; v < k.num_vertices(); ++v)
    for (std::size_t j = 0; j < L; ++j) {
      if (ctx.K.vertex_image[v] != ctx.G.graph().origin(C[j])) continue;
      if (nxt(v, C[(j + L - 1) % L].reverse()) >= 0) continue;
      t.starts.emplace_back(v, j);
    }
  t.budget = static_cast<std::size_t>(2 * k.num_edges()) * L + 1;
  return t;
}

// -1 on budget overrun
long long trace_one(const CountingContext& ctx, const Trace& t, int v, std::size_t j) {
  const auto& C = t.circuit;
  const std::size_t L = C.size();
  const Graph& k = ctx.K.graph;
  const int codes = 2 * ctx.G.graph().num_edges();
  const auto& E = ctx.E;
  const std::size_t m = E.size();
  std::vector<DirEdge> mu;
  int at = v;
  std::size_t phase = j;
  while (true) {
    int code = ctx.next[static_cast<std::size_t>(at) * codes + C[phase].code];
    if (code < 0) break;
    DirEdge d{code};
    mu.push_back(d);
    at = k.terminus(d);
    phase = (phase + 1) % L;
    if (mu.size() > t.budget) return -1;
  }
  long long count = 0;
  std::size_t i = 0;
  while (i + m <= mu.size()) {
    bool fwd = true, bwd = true;
    for (std::size_t s = 0; s < m && (fwd || bwd); ++s) {
      fwd = fwd && mu[i + s] == E[s];
      bwd = bwd && mu[i + s] == E[m - 1 - s].reverse();
    }
    if (fwd || bwd) {
      ++count;
      i += m;
    } else {
      ++i;
    }
  }
  return count;
}

CrossingCount pick(const Trace& t, const std::vector<long long>& vals) {
  CrossingCount best;
  for (std::size_t s = 0; s < vals.size(); ++s) {
    if (vals[s] < 0) fail("trace exceeded its budget: c is conjugate into B");
    if (best.start_vertex < 0 || vals[s] > best.value) {
      best.value = vals[s];
      best.start_vertex = t.starts[s].first;
      best.start_phase = t.starts[s].second;
    }
  }
  if (best.start_vertex < 0) best.value = 0;
  return best;
}

}  // namespace

CrossingCount count_i_serial(const CountingContext& ctx, const CyclicWord& c) {
  Trace t = prepare(ctx, c);
  std::vector<long long> vals(t.starts.size());
  for (std::size_t s = 0; s < t.starts.size(); ++s) vals[s] = trace_one(ctx, t, t.starts[s].first, t.starts[s].second);
  return pick(t, vals);
}

CrossingCount count_i(const CountingContext& ctx, const CyclicWord& c) {
  Trace t = prepare(ctx, c);
  std::vector<long long> vals(t.starts.size());
  const long n = static_cast<long>(t.starts.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long s = 0; s < n; ++s) vals[s] = trace_one(ctx, t, t.starts[s].first, t.starts[s].second);
  return pick(t, vals);
}

std::pair<long long, long long> lipschitz_audit(const FreeFactorSystem& A, std::span<const Word> B,
                                                const MarkedGraph& G, std::span<const int> forest,
                                                const CyclicWord& c) {
  CountingContext before = build_context(A, B, G);
  MarkedGraph Gp = collapse_marked(G, forest);
  if (!realizes(Gp, A)) fail("collapse leaves the realizing set of A");
  CountingContext after = build_context(A, B, Gp);
  return {count_i(before, c).value, count_i(after, c).value};
}

}  // namespace outspace
