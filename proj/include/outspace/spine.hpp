#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "outspace/covers.hpp"
#include "outspace/marked_graph.hpp"

namespace outspace {

// One spine edge: collapse_marked(from, forest) ~ to when `collapse`, otherwise
// collapse_marked(to, forest) ~ from.
struct SpineStep {
  bool collapse = true;
  std::vector<int> forest;
};

struct Neighbor {
  MarkedGraph vertex;
  SpineStep step;
};

// all collapses by nonempty natural forests, then all expansions; deduplicated up to equivalence
std::vector<Neighbor> collapse_neighbors(const MarkedGraph& v);
// expansions = iterated single-edge blow-ups, so every G' with G'/F ~ v appears once
std::vector<Neighbor> expansion_neighbors(const MarkedGraph& v);
std::vector<Neighbor> neighbors(const MarkedGraph& v);

bool verify_step(const MarkedGraph& from, const MarkedGraph& to, const SpineStep& s);

struct SpinePath {
  std::vector<MarkedGraph> vertices;
  std::vector<SpineStep> steps;  // steps[i] joins vertices[i] and vertices[i+1]
  bool guarded = false;          // a free factor system was requested and every vertex realizes it
  std::string note;

  int length() const { return static_cast<int>(steps.size()); }
  bool verify() const;
  std::string dump() const;
};

// Set of spine vertices keyed by circuit lengths, decided exactly by equivalent().
class VertexSet {
 public:
  // index of an equivalent stored vertex, or -1
  int find(const MarkedGraph& v) const;
  int find(const MarkedGraph& v, const std::vector<int>& key) const;
  // returns (index, inserted)
  std::pair<int, bool> insert(const MarkedGraph& v);
  std::pair<int, bool> insert(const MarkedGraph& v, const std::vector<int>& key);
  const MarkedGraph& at(int i) const { return items_[i]; }
  int size() const { return static_cast<int>(items_.size()); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<int>& k) const noexcept;
  };
  std::vector<MarkedGraph> items_;
  std::unordered_map<std::vector<int>, std::vector<int>, KeyHash> buckets_;
};

using VertexFilter = std::function<bool(const MarkedGraph&)>;

// exact distance if <= cap; frontier expansion runs in parallel
std::optional<int> bfs_distance(const MarkedGraph& u, const MarkedGraph& v, int cap, const VertexFilter& keep = {});
std::optional<int> bfs_distance_serial(const MarkedGraph& u, const MarkedGraph& v, int cap,
                                       const VertexFilter& keep = {});
std::optional<SpinePath> bfs_path(const MarkedGraph& u, const MarkedGraph& v, int cap, const VertexFilter& keep = {});
// number of vertices within `radius` of u
long long ball_size(const MarkedGraph& u, int radius, bool parallel = true);

// shortest certified path of length <= 2 found by local search, then bfs up to cap
std::optional<SpinePath> short_link(const MarkedGraph& u, const MarkedGraph& v, int cap = 4,
                                    const VertexFilter& keep = {});

// Factor a marking-respecting map G -> G' into maximal folds; consecutive fold stages are joined by
// short certified links. With F, the map is chosen to send the realizing subrose of G onto that of G'.
SpinePath fold_path(const MarkedGraph& G, const MarkedGraph& Gp, const FreeFactorSystem* F = nullptr);

}  // namespace outspace
