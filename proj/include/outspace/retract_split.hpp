#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "outspace/covers.hpp"
#include "outspace/marked_graph.hpp"

namespace outspace {

// The boundary point prefix * period^infinity.
struct RayDatum {
  Word prefix;
  Word period;
  std::string str() const;
};

// One-edge splitting. Loop: vertex group A, stable letter t, F_n = A * <t>.
// Segment: vertex groups A_0, A_1 with F_n = A_0 * A_1.
struct SplittingBlueprint {
  enum class Type { loop, segment };
  Type type = Type::loop;
  int rank = 0;
  std::vector<std::string> names;
  std::vector<std::vector<Word>> vertices;
  Word stable;
  // loop: ray1 leaves along t (attracting end), ray2 along t^-1. segment: ray1 at A_0, ray2 at A_1.
  std::vector<RayDatum> rays;

  // splitting { type: loop; vertex A = a1, a2; stable: a3; ray1: prefix "", period a3; ray2: ... }
  static SplittingBlueprint parse(std::string_view text);
  std::string str() const;

  // loop: a_i -> (A generators..., t); segment: a_i -> (A_0 generators..., A_1 generators...)
  Automorphism basis_change() const;
  FreeFactorSystem vertex_system() const;
  void validate() const;
  // fills rays with the defaults: t^{+-infinity} (loop), the other side's first generator (segment)
  void default_rays();
};

SplittingBlueprint coindex1_to_splitting(const FreeFactorSystem& F);

// The standard representative of the base vertex: rose (loop) or barbell (segment).
MarkedGraph blueprint_base(const SplittingBlueprint& bp);

struct CVKTWitness {
  CoreSubgraphWitness realization;
  int edge = -1;  // the complementary natural edge
};

std::optional<CVKTWitness> in_CVKT(const MarkedGraph& G, const SplittingBlueprint& bp);

// reduced edge ray from the basepoint: prefix then period repeated
struct EdgeRay {
  std::vector<DirEdge> prefix;
  std::vector<DirEdge> period;
};
EdgeRay edge_ray(const MarkedGraph& G, const RayDatum& r);

struct AttachPoint {
  int vertex = -1;            // vertex of the core graph
  std::vector<DirEdge> path;  // core path from the core basepoint to the attach vertex
  bool interior = false;      // valence 2 in the core: a subdivision point of a natural edge
  int steps = 0;              // ray edges read before leaving the core
};

// `core` must be the based Stallings core of the vertex group in G.
AttachPoint attach_point(const SubgroupGraph& core, const MarkedGraph& G, const RayDatum& ray);

struct SplitRetraction {
  MarkedGraph result;
  std::vector<SubgroupGraph> cores;
  std::vector<AttachPoint> points;
  std::vector<int> natural_of;  // per core edge (concatenated over cores) -> edge of result
  int new_edge = -1;            // the blueprint edge in result
};

SplitRetraction retract_R_full(const MarkedGraph& G, const SplittingBlueprint& bp);
inline MarkedGraph retract_R(const MarkedGraph& G, const SplittingBlueprint& bp) { return retract_R_full(G, bp).result; }

struct SplitAudit {
  int distance = 0;  // 0, 1, or 2 when the two retractions are not adjacent
  bool hull = true;  // the natural hull of the collapsed core edges explained the edge
  std::vector<int> forest;
};

SplitAudit retraction_audit(const MarkedGraph& G, std::span<const int> forest, const SplittingBlueprint& bp);

struct SplitAuditCase {
  MarkedGraph G;
  std::vector<int> forest;
};
// distances; -1 where the audit raised
std::vector<int> split_audit_batch(std::span<const SplitAuditCase> cases, const SplittingBlueprint& bp);
std::vector<int> split_audit_batch_serial(std::span<const SplitAuditCase> cases, const SplittingBlueprint& bp);

}  // namespace outspace
