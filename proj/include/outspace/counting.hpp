#pragma once

#include <span>
#include <utility>
#include <vector>

#include "outspace/covers.hpp"
#include "outspace/marked_graph.hpp"

namespace outspace {

enum class ComplementShape {
  bridge,         // one chain with both ends on K_A
  touching_loop,  // one chain, a loop based at a vertex of K_A
  detached_loop,  // a loop away from K_A plus a connecting chain; E is the loop
  two_component,  // one chain joining K_A0 and K_A1
};

const char* shape_name(ComplementShape s);

struct CountingContext {
  MarkedGraph G;
  FreeFactorSystem A;  // one or two components
  std::vector<Word> B;
  SubgroupGraph K;            // B-core (based form; basepoint unused by the count)
  std::vector<bool> in_KA;    // per edge of K
  std::vector<DirEdge> E;     // crossing edge as a chain of K edges
  ComplementShape shape = ComplementShape::bridge;
  // next[v * 2|E(G)| + ambient code] = K directed edge code leaving v with that label, or -1
  std::vector<int> next;
};

CountingContext build_context(const FreeFactorSystem& A, std::span<const Word> B, const MarkedGraph& G);

struct CrossingCount {
  long long value = 0;
  int start_vertex = -1;
  std::size_t start_phase = 0;
};

// Parallel over start positions.
CrossingCount count_i(const CountingContext& ctx, const CyclicWord& c);
// Reference implementation; same result.
CrossingCount count_i_serial(const CountingContext& ctx, const CyclicWord& c);

// (i(c,G), i(c,G/forest)); throws if the collapse leaves the realizing set of A.
std::pair<long long, long long> lipschitz_audit(const FreeFactorSystem& A, std::span<const Word> B,
                                                const MarkedGraph& G, std::span<const int> forest,
                                                const CyclicWord& c);

}  // namespace outspace
