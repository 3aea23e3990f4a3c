#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "outspace/graph.hpp"
#include "outspace/marked_graph.hpp"
#include "outspace/word.hpp"

namespace outspace {

// Stallings graph of a subgroup, immersed in an ambient marked graph.
struct SubgroupGraph {
  Graph graph;
  std::vector<DirEdge> label;     // ambient directed edge read along forward(e)
  std::vector<int> vertex_image;  // ambient vertex
  // based form
  int base = -1;
  std::vector<DirEdge> tail;    // ambient edges of the trimmed arc, from the ambient basepoint to base
  std::vector<EdgePath> loops;  // generator loops at base, one per generator

  int rank() const { return graph.betti(); }
  DirEdge label_of(DirEdge d) const { return d.reversed() ? label[d.edge()].reverse() : label[d.edge()]; }
  // the edge leaving v that reads `ambient`, if any
  std::optional<DirEdge> step(int v, DirEdge ambient) const;
};

SubgroupGraph stallings_core(std::span<const Word> gens, const MarkedGraph& G, bool based = false);
// subgraph of G's graph on the given edges, labels = identity
SubgroupGraph induced_subgraph(const Graph& g, std::span<const int> edges);

std::optional<GraphIso> labeled_isomorphism(const SubgroupGraph& a, const SubgroupGraph& b);
bool subgroups_conjugate(const SubgroupGraph& a, const SubgroupGraph& b);
// label-preserving graph map a -> b exists (a's subgroup is conjugate into b's)
bool maps_into(const SubgroupGraph& a, const SubgroupGraph& b);

bool minimal_subtree_collapse_check(const MarkedGraph& G, std::span<const int> forest, std::span<const Word> gens);

struct FreeFactorSystem {
  int rank = 0;  // ambient n
  std::vector<std::vector<Word>> components;

  // "a1 | a2, a3": components split by '|', generators by ','
  static FreeFactorSystem parse(int n, std::string_view text);
  std::string str() const;
};

int coindex(const FreeFactorSystem& F);
bool ffs_partial_order(const FreeFactorSystem& F, const FreeFactorSystem& Fp);
bool ffs_equal(const FreeFactorSystem& F, const FreeFactorSystem& Fp);

struct CoreSubgraphWitness {
  std::vector<int> edges;
  std::vector<std::vector<int>> components;  // components[k] realizes F.components[k]
};

// Visits realizations in bitmask order until visit returns false.
void for_each_realization(const MarkedGraph& G, const FreeFactorSystem& F,
                          const std::function<bool(const CoreSubgraphWitness&)>& visit);
std::optional<CoreSubgraphWitness> realizes(const MarkedGraph& G, const FreeFactorSystem& F);

// The system [H] carried by disjoint core subgraphs (edge lists) of G, as generator words.
FreeFactorSystem system_of(const MarkedGraph& G, const std::vector<std::vector<int>>& components);
// generators of pi_1 of a connected core subgraph, conjugated to the basepoint of G
std::vector<Word> subgraph_generators(const MarkedGraph& G, std::span<const int> edges);

}  // namespace outspace
