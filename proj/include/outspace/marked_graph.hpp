#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "outspace/endomorphism.hpp"
#include "outspace/graph.hpp"
#include "outspace/word.hpp"

namespace outspace {

// Reads closed paths at the basepoint as elements of F_n.
struct MarkingDecoder {
  std::vector<DirEdge> tree;    // spanning tree parent pointers
  std::vector<int> generator;   // edge -> index of x-generator (1-based), 0 for tree edges
  Endomorphism x_to_a;          // inverse of a_i -> (x-word of marking path)
};

class MarkedGraph {
 public:
  MarkedGraph() = default;
  // Validates: core graph, closed paths at base, and that the marking is a homotopy equivalence.
  MarkedGraph(Graph g, int base, std::vector<EdgePath> marking);
  static MarkedGraph rose(int rank);

  int rank() const { return static_cast<int>(marking_.size()); }
  const Graph& graph() const { return g_; }
  int base() const { return base_; }
  const std::vector<EdgePath>& marking() const { return marking_; }
  const EdgePath& marking(int index) const { return marking_[index - 1]; }

  EdgePath expand(const Word& w) const;
  Word decode(const EdgePath& loop) const;
  const MarkingDecoder& decoder() const { return *dec_; }

  bool is_natural() const { return g_.is_natural(); }
  // natural cell structure; the basepoint moves to a natural vertex if needed
  MarkedGraph normalized() const;
  // new basepoint v with gamma a path from v to the current base
  MarkedGraph rebased(const EdgePath& gamma) const;

 private:
  Graph g_;
  int base_ = -1;
  std::vector<EdgePath> marking_;
  std::shared_ptr<const MarkingDecoder> dec_;
};

MarkedGraph act(const MarkedGraph& G, const Automorphism& phi);
MarkedGraph act(const MarkedGraph& G, const Endomorphism& phi);  // checked to be invertible

std::vector<DirEdge> circuit_of(const MarkedGraph& G, const CyclicWord& c);
std::vector<DirEdge> circuit_of(const MarkedGraph& G, const Word& w);

struct Equivalence {
  GraphIso iso;
  Word conjugator;
};

std::optional<Equivalence> equivalent(const MarkedGraph& G, const MarkedGraph& H);

MarkedGraph collapse_marked(const MarkedGraph& G, std::span<const int> forest);
// same, also returning the collapse map
MarkedGraph collapse_marked(const MarkedGraph& G, std::span<const int> forest, CollapseMap& map);

MarkedGraph lift_blowup(const MarkedGraph& G, const Blowup& b);
EdgePath lift_path(const Graph& g, const Blowup& b, const EdgePath& p);

// Circuit lengths of all cyclically reduced words of length <= 3, in a fixed order.
std::vector<int> invariant_key(const MarkedGraph& G);

}  // namespace outspace
