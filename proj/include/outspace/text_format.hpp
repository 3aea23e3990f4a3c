#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "outspace/graph.hpp"
#include "outspace/marked_graph.hpp"

namespace outspace {

struct GraphFile {
  Graph graph;
  std::optional<int> base;
  std::optional<std::vector<EdgePath>> marking;
};

// graph { v: v0 v1; e: e1 v0 v1; e2 v1 v1; basepoint: v0; }  marking { a1 = e1; ... }
GraphFile parse_graph_file(std::string_view text);
EdgePath parse_path(const Graph& g, int start, std::string_view text);

std::string format_graph(const Graph& g, std::optional<int> base = std::nullopt);
std::string format_marking(const Graph& g, const std::vector<EdgePath>& marking);
std::string format_marked(const MarkedGraph& G);

// basepoint defaults to the first vertex
MarkedGraph parse_marked(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace outspace
