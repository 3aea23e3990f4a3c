#pragma once

#include <random>

#include "outspace/endomorphism.hpp"
#include "outspace/word.hpp"

inline outspace::Word W(int n, const char* s) { return outspace::parse_word(n, s); }
inline outspace::Endomorphism M(int n, const char* s) { return outspace::parse_endomorphism(n, s); }

inline outspace::Word random_word(std::mt19937_64& rng, int n, int len) {
  std::vector<outspace::Letter> ls;
  std::uniform_int_distribution<int> idx(1, n), sg(0, 1);
  for (int i = 0; i < len; ++i) ls.emplace_back(idx(rng), sg(rng) ? 1 : -1);
  return outspace::Word(n, std::span<const outspace::Letter>(ls));
}

#include "outspace/graph.hpp"
#include "outspace/marked_graph.hpp"
#include "outspace/text_format.hpp"

inline outspace::Graph theta_graph() {
  outspace::Graph g;
  g.add_vertex();
  g.add_vertex();
  for (int i = 0; i < 3; ++i) g.add_edge(0, 1);
  return g;
}

// theta graph with a1 = e1 e2^-1, a2 = e1 e3^-1 at v0
inline outspace::MarkedGraph theta_marked() {
  return outspace::parse_marked(
      "graph { v: v0 v1; e: e1 v0 v1; e2 v0 v1; e3 v0 v1; basepoint: v0; }"
      "marking { a1 = e1 e2^-1; a2 = e1 e3^-1; }");
}

inline outspace::Automorphism A(int n, const char* s) { return outspace::Automorphism(M(n, s)); }
