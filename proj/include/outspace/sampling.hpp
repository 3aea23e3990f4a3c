#pragma once

#include <random>
#include <vector>

#include "outspace/endomorphism.hpp"
#include "outspace/marked_graph.hpp"
#include "outspace/retract_aut.hpp"

namespace outspace {

using Rng = std::mt19937_64;

std::vector<NielsenMove> random_nielsen_word(Rng& rng, int n, int len, bool transpositions = false);
Automorphism random_automorphism(Rng& rng, int n, int len);
// moves that keep <a_1..a_r> invariant: a_1..a_r mix only among themselves
Automorphism random_stab_automorphism(Rng& rng, int n, int r, int len);
// preserves each <a_1..a_r> for r in levels (increasing): a letter only picks up letters of its lowest level
Automorphism random_flag_automorphism(Rng& rng, int n, const std::vector<int>& levels, int len);

// natural marked graph: a rose moved by an automorphism, then random blow-ups and collapses
MarkedGraph random_marked_graph(Rng& rng, int n, int steps, int twist = 3);
// basepoint at a random vertex or at the midpoint of a random edge
PointedMarkedGraph random_pointed(Rng& rng, int n, int steps);

// random acyclic edge set; empty only if the graph has no non-loop edges or nonempty is false
std::vector<int> random_forest(Rng& rng, const Graph& g, bool nonempty = true);

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

}  // namespace outspace
