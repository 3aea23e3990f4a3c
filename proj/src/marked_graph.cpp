#include "outspace/marked_graph.hpp"

#include <algorithm>

#include "outspace/error.hpp"

namespace outspace {

namespace {

std::shared_ptr<const MarkingDecoder> make_decoder(const Graph& g, int base, const std::vector<EdgePath>& marking) {
  auto dec = std::make_shared<MarkingDecoder>();
  dec->tree = spanning_tree(g, base);
  dec->generator.assign(g.num_edges(), 0);
  std::vector<bool> in_tree(g.num_edges(), false);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (v != base) in_tree[dec->tree[v].edge()] = true;
  int n = 0;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!in_tree[e]) dec->generator[e] = ++n;
  const int rank = static_cast<int>(marking.size());
  if (n != rank) fail("marking rank " + std::to_string(rank) + " differs from graph rank " + std::to_string(n));
  std::vector<Word> im;
  for (const auto& p : marking) {
    std::vector<Letter> ls;
    for (DirEdge d : p.edges)
      if (int x = dec->generator[d.edge()]) ls.emplace_back(x, d.reversed() ? -1 : 1);
    im.emplace_back(rank, std::span<const Letter>(ls));
  }
  auto inv = is_automorphism(Endomorphism(rank, im));
  if (!inv) fail("marking is not a homotopy equivalence");
  dec->x_to_a = *inv;
  return dec;
}

}  // namespace

MarkedGraph::MarkedGraph(Graph g, int base, std::vector<EdgePath> marking)
    : g_(std::move(g)), base_(base), marking_(std::move(marking)) {
  require(!marking_.empty(), "marking must have at least one letter");
  require(g_.is_core(), "marked graph must be a connected core graph");
  require(base_ >= 0 && base_ < g_.num_vertices(), "basepoint out of range");
  for (auto& p : marking_) {
    require(p.valid(g_), "marking path is not a path in the graph");
    require(p.start == base_ && p.end(g_) == base_, "marking path not closed at the basepoint");
    p = reduced(p);
  }
  dec_ = make_decoder(g_, base_, marking_);
}

MarkedGraph MarkedGraph::rose(int rank) {
  Graph g = Graph::rose(rank);
  std::vector<EdgePath> m;
  for (int i = 0; i < rank; ++i) m.push_back(EdgePath{0, {DirEdge::forward(i)}});
  return MarkedGraph(std::move(g), 0, std::move(m));
}

EdgePath MarkedGraph::expand(const Word& w) const {
  require(w.rank() <= rank() || w.empty(), "word rank exceeds marking rank");
  EdgePath r{base_, {}};
  for (Letter l : w.letters()) {
    require(l.index() <= rank(), "word letter out of marking range");
    const auto& p = marking_[l.index() - 1].edges;
    if (l.sign() > 0)
      for (DirEdge d : p) push_reduced(r.edges, d);
    else
      for (auto it = p.rbegin(); it != p.rend(); ++it) push_reduced(r.edges, it->reverse());
  }
  return r;
}

Word MarkedGraph::decode(const EdgePath& loop) const {
  require(loop.start == base_ && loop.end(g_) == base_, "decode: path not closed at basepoint");
  std::vector<Letter> ls;
  for (DirEdge d : loop.edges)
    if (int x = dec_->generator[d.edge()]) ls.emplace_back(x, d.reversed() ? -1 : 1);
  return dec_->x_to_a.apply(Word(rank(), std::span<const Letter>(ls)));
}

MarkedGraph MarkedGraph::rebased(const EdgePath& gamma) const {
  require(gamma.valid(g_) && gamma.end(g_) == base_, "rebase path must end at the basepoint");
  std::vector<EdgePath> m;
  EdgePath back = gamma.inverse(g_);
  for (const auto& p : marking_) m.push_back(concat(g_, concat(g_, gamma, p), back));
  return MarkedGraph(g_, gamma.start, std::move(m));
}

MarkedGraph MarkedGraph::normalized() const {
  if (g_.is_natural()) return *this;
  if (rank() == 1) {
    // a circle keeps its basepoint as the one vertex
    const int keep[] = {base_};
    auto ref = natural_structure(g_, keep);
    return MarkedGraph(ref.natural, ref.vertex_map[base_], {ref.push(marking_[0])});
  }
  MarkedGraph src = *this;
  if (g_.valence(base_) == 2) {
    auto ref = natural_structure(g_);
    const auto& pos = ref.position[g_.star(base_)[0].edge()];
    const auto& ch = ref.chains[pos.natural_edge];
    EdgePath gamma{g_.origin(ch[0]), {}};
    for (DirEdge d : ch) {
      if (gamma.end(g_) == base_) break;
      gamma.edges.push_back(d);
    }
    src = rebased(gamma);
  }
  auto ref = natural_structure(src.g_);
  std::vector<EdgePath> m;
  for (const auto& p : src.marking_) m.push_back(ref.push(p));
  return MarkedGraph(ref.natural, ref.vertex_map[src.base_], std::move(m));
}

MarkedGraph act(const MarkedGraph& G, const Automorphism& phi) {
  require(phi.rank() == G.rank(), "act: rank mismatch");
  std::vector<EdgePath> m;
  for (const Word& w : phi.map().images()) m.push_back(G.expand(w));
  return MarkedGraph(G.graph(), G.base(), std::move(m));
}

MarkedGraph act(const MarkedGraph& G, const Endomorphism& phi) { return act(G, Automorphism(phi)); }

std::vector<DirEdge> circuit_of(const MarkedGraph& G, const Word& w) {
  require(!w.empty(), "circuit of the trivial class");
  return cyclically_reduced(G.expand(w).edges);
}

std::vector<DirEdge> circuit_of(const MarkedGraph& G, const CyclicWord& c) { return circuit_of(G, c.word()); }

std::optional<Equivalence> equivalent(const MarkedGraph& G, const MarkedGraph& H) {
  if (G.rank() != H.rank()) return std::nullopt;
  const int n = G.rank();
  std::vector<Word> basis;
  for (int i = 1; i <= n; ++i) basis.push_back(Word::generator(n, i));
  std::optional<Equivalence> out;
  const auto& tree = H.decoder().tree;
  for_each_isomorphism(G.graph(), H.graph(), [&](const GraphIso& h) {
    EdgePath tau = tree_path(H.graph(), tree, H.base(), H.base(), h.vertex[G.base()]);
    EdgePath tau_back = tau.inverse(H.graph());
    std::vector<Word> w;
    for (const auto& p : G.marking()) {
      EdgePath q{h.vertex[G.base()], {}};
      for (DirEdge d : p.edges) q.edges.push_back(h(d));
      w.push_back(H.decode(concat(H.graph(), concat(H.graph(), tau, q), tau_back)));
    }
    if (auto g = simultaneous_conjugator(w, basis)) {
      out = Equivalence{h, *g};
      return false;
    }
    return true;
  });
  return out;
}

MarkedGraph collapse_marked(const MarkedGraph& G, std::span<const int> forest, CollapseMap& cm) {
  cm = collapse(G.graph(), forest);
  std::vector<EdgePath> m;
  for (const auto& p : G.marking()) m.push_back(cm.push(p));
  return MarkedGraph(cm.target, cm.vertex_map[G.base()], std::move(m));
}

MarkedGraph collapse_marked(const MarkedGraph& G, std::span<const int> forest) {
  CollapseMap cm;
  return collapse_marked(G, forest, cm);
}

EdgePath lift_path(const Graph& g, const Blowup& b, const EdgePath& p) {
  auto moved = [&](DirEdge d) { return std::find(b.moved.begin(), b.moved.end(), d) != b.moved.end(); };
  const DirEdge eps = DirEdge::forward(b.new_edge);
  EdgePath out{p.start, {}};
  int side = 0;  // meaningful while sitting at b.vertex: 0 = old vertex, 1 = new vertex
  if (p.start == b.vertex) side = 0;
  for (DirEdge d : p.edges) {
    if (g.origin(d) == b.vertex) {
      int need = moved(d) ? 1 : 0;
      if (need != side) out.edges.push_back(need ? eps : eps.reverse());
    }
    out.edges.push_back(d);
    if (g.terminus(d) == b.vertex) side = moved(d.reverse()) ? 1 : 0;
  }
  if (p.end(g) == b.vertex && side == 1) out.edges.push_back(eps.reverse());
  return out;
}

MarkedGraph lift_blowup(const MarkedGraph& G, const Blowup& b) {
  std::vector<EdgePath> m;
  for (const auto& p : G.marking()) m.push_back(lift_path(G.graph(), b, p));
  return MarkedGraph(b.graph, G.base(), std::move(m));
}

std::vector<int> invariant_key(const MarkedGraph& G) {
  const int n = G.rank();
  std::vector<int> key;
  std::vector<Letter> alphabet;
  for (int i = 1; i <= n; ++i) {
    alphabet.emplace_back(i, 1);
    alphabet.emplace_back(i, -1);
  }
  auto add = [&](std::vector<Letter> ls) {
    if (ls.size() > 1 && ls.front() == ls.back().inverse()) return;
    key.push_back(static_cast<int>(circuit_of(G, Word(n, std::span<const Letter>(ls))).size()));
  };
  for (Letter x : alphabet) {
    add({x});
    for (Letter y : alphabet) {
      if (y == x.inverse()) continue;
      add({x, y});
      for (Letter z : alphabet)
        if (z != y.inverse()) add({x, y, z});
    }
  }
  return key;
}

}  // namespace outspace
