#pragma once

#include <optional>
#include <span>
#include <vector>

#include "outspace/covers.hpp"
#include "outspace/marked_graph.hpp"

namespace outspace {

// Marked graph with a distinguished point. Cell structure: natural vertices plus the point.
class PointedMarkedGraph {
 public:
  PointedMarkedGraph() = default;
  // throws unless every valence-2 vertex is the basepoint
  explicit PointedMarkedGraph(MarkedGraph G);
  // merges valence-2 vertices other than the basepoint
  static PointedMarkedGraph from(const MarkedGraph& G);
  static PointedMarkedGraph rose(int rank);

  const MarkedGraph& marked() const { return G_; }
  const Graph& graph() const { return G_.graph(); }
  int base() const { return G_.base(); }
  int rank() const { return G_.rank(); }

 private:
  MarkedGraph G_;
};

bool is_relatively_natural(const Graph& g, int base);

// Same graph with edge e subdivided at a new vertex, which becomes the basepoint.
PointedMarkedGraph base_on_edge(const MarkedGraph& G, int e);

// Basepoint-preserving isomorphism carrying each marking loop to the corresponding one.
std::optional<GraphIso> pointed_equivalence(const PointedMarkedGraph& x, const PointedMarkedGraph& y);
inline bool pointed_equivalent(const PointedMarkedGraph& x, const PointedMarkedGraph& y) {
  return pointed_equivalence(x, y).has_value();
}

PointedMarkedGraph act_pointed(const PointedMarkedGraph& x, const Automorphism& phi);
PointedMarkedGraph pointed_collapse(const PointedMarkedGraph& x, std::span<const int> forest, CollapseMap* map = nullptr);

// Attach a loop at the basepoint carrying a_n.
PointedMarkedGraph embed_j(const PointedMarkedGraph& w);

struct AutRetraction {
  PointedMarkedGraph result;
  SubgroupGraph core;           // based core of <a_1..a_{n-1}>, cell structure of x
  std::vector<int> natural_of;  // core edge -> edge of result
};

AutRetraction retract_r_full(const PointedMarkedGraph& x);
inline PointedMarkedGraph retract_r(const PointedMarkedGraph& x) { return retract_r_full(x).result; }

struct AutAudit {
  int distance = 0;
  std::vector<int> forest;  // F' in r(x)
};

// x' = x / forest. Throws an invariant error if r(x') is not r(x) / F'.
AutAudit lipschitz_audit(const PointedMarkedGraph& x, std::span<const int> forest);

struct AuditCase {
  PointedMarkedGraph x;
  std::vector<int> forest;
};

// Distances per case, -1 where the audit raised; parallel and serial versions agree.
std::vector<int> audit_batch(std::span<const AuditCase> cases);
std::vector<int> audit_batch_serial(std::span<const AuditCase> cases);

}  // namespace outspace
