#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace outspace {

// Edge id plus orientation; code = 2*edge + reversed.
struct DirEdge {
  std::int32_t code = 0;

  static constexpr DirEdge forward(int e) { return DirEdge{2 * e}; }
  static constexpr DirEdge backward(int e) { return DirEdge{2 * e + 1}; }
  // signed label +(e+1) / -(e+1), the alphabet used by folding
  static constexpr DirEdge from_label(int l) { return l > 0 ? forward(l - 1) : backward(-l - 1); }

  constexpr int edge() const { return code >> 1; }
  constexpr bool reversed() const { return code & 1; }
  constexpr DirEdge reverse() const { return DirEdge{code ^ 1}; }
  constexpr int label() const { return reversed() ? -(edge() + 1) : edge() + 1; }

  friend constexpr auto operator<=>(DirEdge, DirEdge) = default;
};

class Graph {
 public:
  int add_vertex(std::string name = {});
  int add_edge(int origin, int terminus, std::string name = {});

  int num_vertices() const { return static_cast<int>(vertex_names_.size()); }
  int num_edges() const { return static_cast<int>(ends_.size()); }
  int origin(int e) const { return ends_[e].first; }
  int terminus(int e) const { return ends_[e].second; }
  int origin(DirEdge d) const { return d.reversed() ? ends_[d.edge()].second : ends_[d.edge()].first; }
  int terminus(DirEdge d) const { return d.reversed() ? ends_[d.edge()].first : ends_[d.edge()].second; }
  // directions leaving v (a loop contributes both of its directions)
  const std::vector<DirEdge>& star(int v) const { return star_[v]; }
  int valence(int v) const { return static_cast<int>(star_[v].size()); }

  int components() const;
  bool connected() const { return components() == 1; }
  int betti() const { return num_edges() - num_vertices() + components(); }
  bool is_core() const;     // connected, no vertex of valence < 2
  bool is_natural() const;  // core and no vertex of valence 2

  const std::string& vertex_name(int v) const { return vertex_names_[v]; }
  const std::string& edge_name(int e) const { return edge_names_[e]; }
  std::optional<int> find_vertex(const std::string& name) const;
  std::optional<int> find_edge(const std::string& name) const;
  std::string dir_name(DirEdge d) const;

  static Graph rose(int rank);

 private:
  std::vector<std::string> vertex_names_, edge_names_;
  std::vector<std::pair<int, int>> ends_;
  std::vector<std::vector<DirEdge>> star_;
};

struct EdgePath {
  int start = -1;
  std::vector<DirEdge> edges;

  int end(const Graph& g) const { return edges.empty() ? start : g.terminus(edges.back()); }
  bool reduced() const;
  bool valid(const Graph& g) const;
  EdgePath inverse(const Graph& g) const;
  std::string str(const Graph& g) const;
  friend bool operator==(const EdgePath&, const EdgePath&) = default;
};

void push_reduced(std::vector<DirEdge>& acc, DirEdge d);
EdgePath reduced(const EdgePath& p);
// reduced concatenation; p.end must equal q.start
EdgePath concat(const Graph& g, const EdgePath& p, const EdgePath& q);
// strip backtracking around the closing point of a closed path
std::vector<DirEdge> cyclically_reduced(std::vector<DirEdge> circuit);
// least rotation by code; circuits equal as cyclic sequences iff canonical forms equal
std::vector<DirEdge> canonical_rotation(const std::vector<DirEdge>& circuit);
// tree path between vertices inside a spanning tree given as parent pointers
EdgePath tree_path(const Graph& g, const std::vector<DirEdge>& parent_edge, int root, int from, int to);
// BFS spanning tree from root; parent_edge[v] points from parent to v (root: code -1)
std::vector<DirEdge> spanning_tree(const Graph& g, int root);

struct Refinement {
  Graph natural;
  std::vector<std::vector<DirEdge>> chains;  // natural edge -> original directed edges
  std::vector<int> vertex_map;               // original vertex -> natural vertex or -1
  struct Pos {
    int natural_edge = -1;
    int index = -1;
    bool along = true;  // forward(e) runs with the chain
  };
  std::vector<Pos> position;  // per original edge

  // Path between natural vertices -> natural path. Throws if it starts or ends mid-chain.
  EdgePath push(const EdgePath& p) const;
};

// Merge valence-2 chains. `keep` lists vertices that stay even at valence 2.
Refinement natural_structure(const Graph& g, std::span<const int> keep = {});

bool is_forest(const Graph& g, std::span<const int> edges);
// all acyclic edge subsets, ordered by bitmask
std::vector<std::vector<int>> enumerate_natural_subforests(const Graph& g, bool include_empty = true);

struct CollapseMap {
  Graph target;
  std::vector<int> edge_map;  // -1 for collapsed edges
  std::vector<int> vertex_map;
  std::vector<int> forest;

  std::optional<DirEdge> image(DirEdge d) const;
  // erase collapsed edges, rename, reduce; erasure_sufficed reports whether reduction was a no-op
  EdgePath push(const EdgePath& p, bool* erasure_sufficed = nullptr) const;
};

CollapseMap collapse(const Graph& g, std::span<const int> forest);

struct Blowup {
  Graph graph;
  int vertex = -1;    // split vertex, keeps the unmoved directions
  int new_vertex = -1;
  int new_edge = -1;  // vertex -> new_vertex
  std::vector<DirEdge> moved;
};

Blowup blow_up(const Graph& g, int v, std::span<const DirEdge> moved);
// every vertex of valence >= 4, every bipartition with both parts of size >= 2
std::vector<Blowup> enumerate_blowups(const Graph& g);

struct GraphIso {
  std::vector<int> vertex;
  std::vector<DirEdge> edge;  // image of forward(e)
  DirEdge operator()(DirEdge d) const { return d.reversed() ? edge[d.edge()].reverse() : edge[d.edge()]; }
};

// compat(forward edge of a, candidate directed edge of b)
using EdgeCompat = std::function<bool(DirEdge, DirEdge)>;

// Calls visit for each isomorphism a -> b until it returns false.
void for_each_isomorphism(const Graph& a, const Graph& b, const std::function<bool(const GraphIso&)>& visit,
                          const EdgeCompat& compat = {}, std::optional<std::pair<int, int>> pinned = std::nullopt);
std::optional<GraphIso> find_isomorphism(const Graph& a, const Graph& b, const EdgeCompat& compat = {},
                                         std::optional<std::pair<int, int>> pinned = std::nullopt);

}  // namespace outspace
