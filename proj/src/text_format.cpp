#include "outspace/text_format.hpp"

#include <fstream>
#include <sstream>

#include "outspace/error.hpp"

namespace outspace {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// body between "<keyword> {" and the matching "}"
std::optional<std::string> block(std::string_view text, std::string_view keyword) {
  std::size_t pos = 0;
  while ((pos = text.find(keyword, pos)) != std::string_view::npos) {
    bool word_start = pos == 0 || std::isspace(static_cast<unsigned char>(text[pos - 1])) || text[pos - 1] == '}';
    std::size_t p = pos + keyword.size();
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
    if (word_start && p < text.size() && text[p] == '{') {
      std::size_t close = text.find('}', p);
      if (close == std::string_view::npos) fail(std::string(keyword) + " block is not closed");
      return std::string(text.substr(p + 1, close - p - 1));
    }
    pos += keyword.size();
  }
  return std::nullopt;
}

std::vector<std::string> statements(const std::string& body) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : body) {
    if (ch == ';') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

}  // namespace

EdgePath parse_path(const Graph& g, int start, std::string_view text) {
  EdgePath p{start, {}};
  for (const auto& tok : words(text)) {
    if (tok == "1") continue;
    std::string name = tok;
    bool inv = false;
    if (auto c = tok.find('^'); c != std::string::npos) {
      name = tok.substr(0, c);
      std::string ex = tok.substr(c + 1);
      if (ex == "-1")
        inv = true;
      else if (ex != "1")
        fail("bad exponent in path token '" + tok + "'");
    }
    auto e = g.find_edge(name);
    if (!e) fail("unknown edge '" + name + "'");
    p.edges.push_back(inv ? DirEdge::backward(*e) : DirEdge::forward(*e));
  }
  if (!p.valid(g)) fail("edge sequence '" + std::string(text) + "' is not a path");
  return p;
}

GraphFile parse_graph_file(std::string_view text) {
  auto body = block(text, "graph");
  if (!body) fail("no graph block");
  GraphFile f;
  bool edges_mode = false;
  std::string base_name;
  for (auto st : statements(*body)) {
    if (st.empty()) continue;
    auto colon = st.find(':');
    std::string head = colon == std::string::npos ? "" : trim(std::string_view(st).substr(0, colon));
    std::string rest = colon == std::string::npos ? st : st.substr(colon + 1);
    if (head == "v") {
      for (const auto& n : words(rest)) {
        if (f.graph.find_vertex(n)) fail("duplicate vertex '" + n + "'");
        f.graph.add_vertex(n);
      }
      edges_mode = false;
    } else if (head == "basepoint") {
      base_name = trim(rest);
      edges_mode = false;
    } else if (head == "e" || (head.empty() && edges_mode)) {
      auto ws = words(rest);
      if (ws.size() != 3) fail("edge statement needs 'name origin terminus': '" + st + "'");
      auto o = f.graph.find_vertex(ws[1]), t = f.graph.find_vertex(ws[2]);
      if (!o || !t) fail("edge '" + ws[0] + "' uses an unknown vertex");
      if (f.graph.find_edge(ws[0])) fail("duplicate edge '" + ws[0] + "'");
      f.graph.add_edge(*o, *t, ws[0]);
      edges_mode = true;
    } else {
      fail("unrecognized graph statement '" + st + "'");
    }
  }
  if (!base_name.empty()) {
    auto b = f.graph.find_vertex(base_name);
    if (!b) fail("unknown basepoint '" + base_name + "'");
    f.base = *b;
  }
  if (auto mb = block(text, "marking")) {
    int base = f.base.value_or(0);
    std::vector<std::pair<int, EdgePath>> entries;
    for (auto st : statements(*mb)) {
      if (st.empty()) continue;
      auto eq = st.find('=');
      if (eq == std::string::npos) fail("marking entry needs '='");
      std::string lhs = trim(std::string_view(st).substr(0, eq));
      if (lhs.size() < 2 || lhs[0] != 'a') fail("marking entry must name a basis letter");
      int idx = std::stoi(lhs.substr(1));
      entries.emplace_back(idx, parse_path(f.graph, base, std::string_view(st).substr(eq + 1)));
    }
    std::vector<EdgePath> m(entries.size());
    std::vector<bool> seen(entries.size(), false);
    for (auto& [idx, p] : entries) {
      if (idx < 1 || idx > static_cast<int>(entries.size()) || seen[idx - 1]) fail("marking letters must be a1..an once each");
      seen[idx - 1] = true;
      m[idx - 1] = std::move(p);
    }
    f.marking = std::move(m);
  }
  return f;
}

std::string format_graph(const Graph& g, std::optional<int> base) {
  std::ostringstream os;
  os << "graph {\n  v:";
  for (int v = 0; v < g.num_vertices(); ++v) os << ' ' << g.vertex_name(v);
  os << ";\n";
  for (int e = 0; e < g.num_edges(); ++e)
    os << (e == 0 ? "  e: " : "     ") << g.edge_name(e) << ' ' << g.vertex_name(g.origin(e)) << ' '
       << g.vertex_name(g.terminus(e)) << ";\n";
  if (base) os << "  basepoint: " << g.vertex_name(*base) << ";\n";
  os << "}\n";
  return os.str();
}

std::string format_marking(const Graph& g, const std::vector<EdgePath>& marking) {
  std::ostringstream os;
  os << "marking {\n";
  for (std::size_t i = 0; i < marking.size(); ++i) os << "  a" << i + 1 << " = " << marking[i].str(g) << ";\n";
  os << "}\n";
  return os.str();
}

std::string format_marked(const MarkedGraph& G) {
  return format_graph(G.graph(), G.base()) + format_marking(G.graph(), G.marking());
}

MarkedGraph parse_marked(std::string_view text) {
  GraphFile f = parse_graph_file(text);
  if (!f.marking) fail("graph has no marking block");
  return MarkedGraph(std::move(f.graph), f.base.value_or(0), std::move(*f.marking));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace outspace
