#pragma once

#include <optional>
#include <vector>

#include "outspace/word.hpp"

namespace outspace {

// Result of folding: an immersion. Labels are nonzero ints with inverse = negation.
struct FoldedGraph {
  struct Edge {
    int from = 0, to = 0, label = 0;
    Word track;
  };
  std::vector<Edge> edges;
  std::vector<int> vertex_image;  // -1 when unknown
  int base = -1;
  Word base_conj;         // true track of a loop at base = base_conj * edge tracks * base_conj^-1
  bool injective = true;  // false if some fold identified two parallel edges with different tracks

  int num_vertices() const { return static_cast<int>(vertex_image.size()); }
  // signed edge code (+(e+1) forward, -(e+1) backward) leaving v with the given label
  std::optional<int> step(int v, int label) const;
  int endpoint(int signed_edge) const;  // terminus of the signed edge
  const std::vector<std::pair<int, int>>& star(int v) const { return star_[v]; }

  void build_star();

 private:
  std::vector<std::vector<std::pair<int, int>>> star_;  // (label, signed edge), sorted by label
};

// Stallings folding with optional word tracks (gauge-corrected so that a closed path's
// track is well defined up to the stored base conjugator).
class FoldGraph {
 public:
  explicit FoldGraph(int track_rank = 0) : track_rank_(track_rank) {}

  int add_vertex(int image = -1);
  int add_edge(int from, int to, int label, const Word& track = Word());
  void set_base(int v) { base_ = v; }

  FoldedGraph fold() &&;

 private:
  struct V {
    std::vector<int> ends;  // 2*edge + side
    int image = -1;
    bool alive = true;
  };
  struct E {
    int from, to, label;
    Word track;
    bool alive = true;
  };
  int end_label(int end) const;
  int end_other(int end) const;
  Word end_track(int end) const;
  void gauge(int x, const Word& g);
  void merge(int keep, int gone);

  int track_rank_;
  int base_ = -1;
  Word base_conj_;
  bool injective_ = true;
  std::vector<V> vs_;
  std::vector<E> es_;
};

}  // namespace outspace
