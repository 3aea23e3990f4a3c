#include "outspace/retract_split.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "outspace/error.hpp"

namespace outspace {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

bool single_letter(std::string_view tok) {
  auto caret = tok.find('^');
  auto head = tok.substr(0, caret);
  if (head.size() < 2 || head[0] != 'a') return false;
  return std::all_of(head.begin() + 1, head.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// "a1, a2" or "a1 a2" (every token one letter) -> generator list
std::vector<Word> parse_generators(int rank, std::string_view text) {
  if (text.find(',') != std::string_view::npos) return parse_word_list(rank, text);
  std::istringstream in{std::string(text)};
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  if (std::all_of(toks.begin(), toks.end(), [](const std::string& t) { return single_letter(t); })) {
    std::vector<Word> out;
    for (const auto& t : toks) out.push_back(parse_word(rank, t));
    return out;
  }
  return {parse_word(rank, text)};
}

std::string word_text(const Word& w) { return w.empty() ? std::string() : w.str(); }

// prefix "<w>", period <z>
RayDatum parse_ray(int rank, std::string_view text) {
  RayDatum r{Word(rank), Word(rank)};
  bool have_period = false;
  auto q0 = text.find('"');
  std::string_view rest = text;
  if (q0 != std::string_view::npos) {
    auto q1 = text.find('"', q0 + 1);
    require(q1 != std::string_view::npos, "ray: unterminated prefix");
    require(trim(text.substr(0, q0)) == "prefix", "ray: expected 'prefix \"...\"'");
    r.prefix = parse_word(rank, text.substr(q0 + 1, q1 - q0 - 1));
    rest = text.substr(q1 + 1);
  }
  for (auto part : split(rest, ',')) {
    if (part.empty()) continue;
    if (part.rfind("period", 0) == 0) {
      r.period = parse_word(rank, part.substr(6));
      have_period = true;
    } else if (part.rfind("prefix", 0) == 0) {
      r.prefix = parse_word(rank, part.substr(6));
    } else {
      fail("ray: unexpected '" + std::string(part) + "'");
    }
  }
  require(have_period, "ray: missing period");
  return r;
}

Word first_generator(const std::vector<Word>& gens) { return gens.front(); }

std::vector<Word> concat_gens(const SplittingBlueprint& bp) {
  std::vector<Word> imgs;
  for (const auto& v : bp.vertices)
    for (const auto& g : v) imgs.push_back(g);
  if (bp.type == SplittingBlueprint::Type::loop) imgs.push_back(bp.stable);
  return imgs;
}

}  // namespace

std::string RayDatum::str() const { return "prefix \"" + word_text(prefix) + "\", period " + period.str(); }

SplittingBlueprint SplittingBlueprint::parse(std::string_view text) {
  text = trim(text);
  require(text.rfind("splitting", 0) == 0, "blueprint must start with 'splitting'");
  auto open = text.find('{');
  auto close = text.rfind('}');
  require(open != std::string_view::npos && close != std::string_view::npos && close > open, "blueprint: missing braces");
  auto body = text.substr(open + 1, close - open - 1);

  std::vector<std::pair<std::string, std::string>> entries;
  int rank = 0;
  int value_rank = 0;
  for (auto e : split(body, ';')) {
    if (e.empty()) continue;
    if (e.rfind("vertex", 0) == 0) {
      auto eq = e.find('=');
      require(eq != std::string_view::npos, "blueprint: vertex needs '='");
      entries.emplace_back("vertex " + std::string(trim(e.substr(6, eq - 6))), std::string(trim(e.substr(eq + 1))));
    } else {
      auto colon = e.find(':');
      require(colon != std::string_view::npos, "blueprint: expected 'key: value' in '" + std::string(e) + "'");
      entries.emplace_back(std::string(trim(e.substr(0, colon))), std::string(trim(e.substr(colon + 1))));
    }
    auto& [k, v] = entries.back();
    if (k == "rank") {
      rank = std::stoi(v);
    } else if (k != "type") {
      std::string stripped = v;
      std::replace(stripped.begin(), stripped.end(), '"', ' ');
      for (auto& part : split(stripped, ',')) {
        std::string p(part);
        for (const char* kw : {"prefix", "period"})
          if (p.rfind(kw, 0) == 0) p = p.substr(6);
        value_rank = std::max(value_rank, max_letter_index(p));
      }
    }
  }
  if (rank == 0) rank = value_rank;
  require(rank >= 2 && value_rank <= rank, "blueprint: bad rank");

  SplittingBlueprint bp;
  bp.rank = rank;
  std::map<int, RayDatum> rays;
  bool typed = false;
  for (const auto& [k, v] : entries) {
    if (k == "type") {
      if (v == "loop")
        bp.type = Type::loop;
      else if (v == "segment")
        bp.type = Type::segment;
      else
        fail("blueprint: unknown type '" + v + "'");
      typed = true;
    } else if (k == "rank") {
    } else if (k.rfind("vertex ", 0) == 0) {
      bp.names.push_back(k.substr(7));
      bp.vertices.push_back(parse_generators(rank, v));
    } else if (k == "stable") {
      bp.stable = parse_word(rank, v);
    } else if (k.rfind("ray", 0) == 0) {
      int idx = std::stoi(k.substr(3));
      require(idx == 1 || idx == 2, "blueprint: rays are ray1 and ray2");
      rays[idx] = parse_ray(rank, v);
    } else {
      fail("blueprint: unknown key '" + k + "'");
    }
  }
  require(typed, "blueprint: missing type");
  if (rays.empty()) {
    bp.default_rays();
  } else {
    require(rays.size() == 2, "blueprint: give both rays or neither");
    bp.rays = {rays[1], rays[2]};
  }
  bp.validate();
  return bp;
}

std::string SplittingBlueprint::str() const {
  std::ostringstream out;
  out << "splitting { type: " << (type == Type::loop ? "loop" : "segment") << "; rank: " << rank << ";";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    out << " vertex " << names[i] << " =";
    for (std::size_t j = 0; j < vertices[i].size(); ++j) out << (j ? ", " : " ") << vertices[i][j].str();
    out << ";";
  }
  if (type == Type::loop) out << " stable: " << stable.str() << ";";
  for (std::size_t i = 0; i < rays.size(); ++i) out << " ray" << i + 1 << ": " << rays[i].str() << ";";
  out << " }";
  return out.str();
}

Automorphism SplittingBlueprint::basis_change() const {
  auto imgs = concat_gens(*this);
  require(static_cast<int>(imgs.size()) == rank, "blueprint: generators plus stable letter must number n");
  auto a = Automorphism::verify(Endomorphism(rank, imgs));
  if (!a) fail("blueprint: vertex generators and stable letter do not form a basis");
  return *a;
}

FreeFactorSystem SplittingBlueprint::vertex_system() const {
  FreeFactorSystem F;
  F.rank = rank;
  F.components = vertices;
  return F;
}

void SplittingBlueprint::validate() const {
  if (type == Type::loop) {
    require(vertices.size() == 1, "loop blueprint has one vertex");
    require(static_cast<int>(vertices[0].size()) == rank - 1, "loop blueprint: vertex group has rank n-1");
    require(!stable.empty(), "loop blueprint needs a stable letter");
  } else {
    require(vertices.size() == 2, "segment blueprint has two vertices");
    require(static_cast<int>(vertices[0].size() + vertices[1].size()) == rank, "segment blueprint: ranks sum to n");
  }
  for (const auto& v : vertices) require(!v.empty(), "blueprint: empty vertex group");
  require(names.size() == vertices.size(), "blueprint: vertex names");
  require(rays.size() == 2, "blueprint: two rays");
  for (const auto& r : rays) require(!r.period.empty(), "ray period must be nontrivial");
  basis_change();
}

void SplittingBlueprint::default_rays() {
  if (type == Type::loop) {
    rays = {RayDatum{Word(rank), stable}, RayDatum{Word(rank), stable.inverse()}};
  } else {
    rays = {RayDatum{Word(rank), first_generator(vertices[1])}, RayDatum{Word(rank), first_generator(vertices[0])}};
  }
}

namespace {

void for_each_word(int n, int len, const std::function<bool(const Word&)>& visit) {
  std::vector<int> idx(len, 0);
  for (;;) {
    std::vector<Letter> ls;
    bool ok = true;
    for (int i = 0; i < len; ++i) {
      Letter l(idx[i] / 2 + 1, idx[i] % 2 ? -1 : 1);
      if (!ls.empty() && ls.back() == l.inverse()) ok = false;
      ls.push_back(l);
    }
    if (ok && !visit(Word(n, std::span<const Letter>(ls)))) return;
    int i = len - 1;
    while (i >= 0 && ++idx[i] == 2 * n) idx[i--] = 0;
    if (i < 0) return;
  }
}

bool is_basis(int n, const std::vector<Word>& imgs) {
  return static_cast<int>(imgs.size()) == n && Automorphism::verify(Endomorphism(n, imgs)).has_value();
}

}  // namespace

SplittingBlueprint coindex1_to_splitting(const FreeFactorSystem& F) {
  const int n = F.rank;
  require(coindex(F) == 1, "coindex1_to_splitting: coindex is " + std::to_string(coindex(F)) + ", not 1");
  SplittingBlueprint bp;
  bp.rank = n;
  bp.vertices = F.components;
  if (F.components.size() == 1) {
    bp.type = SplittingBlueprint::Type::loop;
    bp.names = {"A"};
    require(static_cast<int>(F.components[0].size()) == n - 1, "loop splitting: give n-1 free generators");
    for (int len = 1; len <= 3 && bp.stable.empty(); ++len)
      for_each_word(n, len, [&](const Word& t) {
        auto imgs = F.components[0];
        imgs.push_back(t);
        if (!is_basis(n, imgs)) return true;
        bp.stable = t;
        return false;
      });
    require(!bp.stable.empty(), "loop splitting: no short complementary letter found");
  } else {
    require(F.components.size() == 2, "coindex-1 system with more than two components");
    bp.type = SplittingBlueprint::Type::segment;
    bp.names = {"A0", "A1"};
    require(static_cast<int>(F.components[0].size() + F.components[1].size()) == n,
            "segment splitting: give free generators of both factors");
    bool found = false;
    for (int len = 0; len <= 2 && !found; ++len)
      for_each_word(n, len, [&](const Word& g) {
        auto imgs = F.components[0];
        std::vector<Word> conj;
        for (const auto& w : F.components[1]) conj.push_back(g * w * g.inverse());
        imgs.insert(imgs.end(), conj.begin(), conj.end());
        if (!is_basis(n, imgs)) return true;
        bp.vertices[1] = conj;
        found = true;
        return false;
      });
    require(found, "segment splitting: factors are not complementary up to short conjugation");
  }
  bp.default_rays();
  bp.validate();
  return bp;
}

MarkedGraph blueprint_base(const SplittingBlueprint& bp) {
  const int n = bp.rank;
  Graph g;
  std::vector<EdgePath> m;
  if (bp.type == SplittingBlueprint::Type::loop) {
    g = Graph::rose(n);
    for (int i = 0; i < n; ++i) m.push_back(EdgePath{0, {DirEdge::forward(i)}});
  } else {
    const int p = static_cast<int>(bp.vertices[0].size());
    int v0 = g.add_vertex("v0"), v1 = g.add_vertex("v1");
    for (int i = 0; i < n; ++i) g.add_edge(i < p ? v0 : v1, i < p ? v0 : v1, "e" + std::to_string(i + 1));
    int bar = g.add_edge(v0, v1, "e" + std::to_string(n + 1));
    for (int i = 0; i < n; ++i)
      m.push_back(i < p ? EdgePath{v0, {DirEdge::forward(i)}}
                        : EdgePath{v0, {DirEdge::forward(bar), DirEdge::forward(i), DirEdge::backward(bar)}});
  }
  MarkedGraph Y(g, 0, std::move(m));
  return act(Y, bp.basis_change().inverse());
}

std::optional<CVKTWitness> in_CVKT(const MarkedGraph& G, const SplittingBlueprint& bp) {
  require(G.rank() == bp.rank, "in_CVKT: rank mismatch");
  const Graph& g = G.graph();
  std::optional<CVKTWitness> out;
  for_each_realization(G, bp.vertex_system(), [&](const CoreSubgraphWitness& w) {
    std::vector<int> side(g.num_vertices(), -1);
    std::vector<bool> used(g.num_edges(), false);
    for (std::size_t k = 0; k < w.components.size(); ++k)
      for (int e : w.components[k]) {
        used[e] = true;
        side[g.origin(e)] = side[g.terminus(e)] = static_cast<int>(k);
      }
    std::vector<int> rest;
    for (int e = 0; e < g.num_edges(); ++e)
      if (!used[e]) rest.push_back(e);
    if (rest.size() != 1) return true;
    int a = side[g.origin(rest[0])], b = side[g.terminus(rest[0])];
    bool ok = bp.type == SplittingBlueprint::Type::loop ? (a == 0 && b == 0) : (a >= 0 && b >= 0 && a != b);
    if (!ok) return true;
    out = CVKTWitness{w, rest[0]};
    return false;
  });
  return out;
}

EdgeRay edge_ray(const MarkedGraph& G, const RayDatum& r) {
  require(!r.period.empty(), "ray period must be nontrivial");
  // w z^inf = (w c) z'^inf with z = c z' c^-1, z' cyclically reduced
  auto cr = cyclic_reduce(r.period);
  EdgePath lead = G.expand(r.prefix * cr.conjugator);
  EdgePath loop = G.expand(cr.conjugator.inverse() * r.period * cr.conjugator);
  // loop = tau zeta tau^-1 with zeta cyclically reduced
  std::vector<DirEdge> z = loop.edges;
  std::vector<DirEdge> tau;
  std::size_t lo = 0, hi = z.size();
  while (hi - lo >= 2 && z[lo] == z[hi - 1].reverse()) {
    tau.push_back(z[lo]);
    ++lo;
    --hi;
  }
  std::vector<DirEdge> zeta(z.begin() + lo, z.begin() + hi);
  if (zeta.empty()) violated("edge_ray: period expands to a null-homotopic loop");
  std::vector<DirEdge> pre = lead.edges;
  for (DirEdge d : tau) push_reduced(pre, d);
  // cancel the finite part against the periodic stream
  while (!pre.empty() && pre.back() == zeta.front().reverse()) {
    pre.pop_back();
    std::rotate(zeta.begin(), zeta.begin() + 1, zeta.end());
  }
  return EdgeRay{std::move(pre), std::move(zeta)};
}

AttachPoint attach_point(const SubgroupGraph& core, const MarkedGraph& G, const RayDatum& ray) {
  require(core.base >= 0, "attach_point needs a based core");
  EdgeRay er = edge_ray(G, ray);
  const Graph& k = core.graph;
  const std::size_t L = core.tail.size();
  AttachPoint out;
  out.vertex = core.base;

  std::size_t pos = 0;  // position on the tail; L means inside the core
  int v = core.base;
  std::vector<DirEdge> delta;
  const std::size_t P = er.prefix.size(), Z = er.period.size();
  const std::size_t budget = P + L + (static_cast<std::size_t>(k.num_vertices()) + 1) * Z + 1;
  std::vector<std::vector<bool>> seen(k.num_vertices(), std::vector<bool>(Z, false));

  for (std::size_t step = 0;; ++step) {
    DirEdge d = step < P ? er.prefix[step] : er.period[(step - P) % Z];
    if (pos < L) {
      if (d != core.tail[pos]) break;  // left the arc into a hanging tree: never meets the core
      ++pos;
      continue;
    }
    if (step >= P) {
      std::size_t phase = (step - P) % Z;
      if (seen[v][phase]) fail("attach_point: ray stays in the vertex group's core (endpoint lies in its boundary)");
      seen[v][phase] = true;
    }
    if (step > budget) fail("attach_point: trace budget exceeded");
    auto s = core.step(v, d);
    if (!s) break;
    delta.push_back(*s);
    v = k.terminus(*s);
    out.steps = static_cast<int>(step + 1);
  }
  out.vertex = v;
  out.path = std::move(delta);
  out.interior = k.valence(v) == 2;
  return out;
}

SplitRetraction retract_R_full(const MarkedGraph& G, const SplittingBlueprint& bp) {
  bp.validate();
  require(G.rank() == bp.rank, "retract_R: rank mismatch");
  const bool loop = bp.type == SplittingBlueprint::Type::loop;
  SplitRetraction R;
  for (const auto& gens : bp.vertices) R.cores.push_back(stallings_core(gens, G, true));
  if (loop) {
    R.points.push_back(attach_point(R.cores[0], G, bp.rays[0]));
    R.points.push_back(attach_point(R.cores[0], G, bp.rays[1]));
  } else {
    R.points.push_back(attach_point(R.cores[0], G, bp.rays[0]));
    R.points.push_back(attach_point(R.cores[1], G, bp.rays[1]));
  }

  // disjoint union of the cores in G's cell structure, plus the new edge
  Graph h;
  std::vector<int> voff, eoff;
  const Graph& amb = G.graph();
  for (std::size_t c = 0; c < R.cores.size(); ++c) {
    const Graph& k = R.cores[c].graph;
    voff.push_back(h.num_vertices());
    eoff.push_back(h.num_edges());
    for (int v = 0; v < k.num_vertices(); ++v) h.add_vertex("q" + std::to_string(h.num_vertices()));
    for (int e = 0; e < k.num_edges(); ++e)
      h.add_edge(voff[c] + k.origin(e), voff[c] + k.terminus(e), amb.edge_name(R.cores[c].label[e].edge()));
  }
  auto shift = [&](std::size_t c, DirEdge d) {
    return d.reversed() ? DirEdge::backward(eoff[c] + d.edge()) : DirEdge::forward(eoff[c] + d.edge());
  };
  auto shifted = [&](std::size_t c, const std::vector<DirEdge>& p) {
    std::vector<DirEdge> out;
    for (DirEdge d : p) push_reduced(out, shift(c, d));
    return out;
  };
  auto inv = [](std::vector<DirEdge> p) {
    std::reverse(p.begin(), p.end());
    for (auto& d : p) d = d.reverse();
    return p;
  };
  auto cat = [](std::vector<DirEdge> a, const std::vector<DirEdge>& b) {
    for (DirEdge d : b) push_reduced(a, d);
    return a;
  };

  const std::size_t c1 = loop ? 0 : 1;
  const int q0 = voff[0] + R.points[0].vertex;
  const int q1 = voff[c1] + R.points[1].vertex;
  const int eps = h.add_edge(q0, q1, "e" + std::to_string(h.num_edges() + 1));
  const std::vector<DirEdge> d0 = shifted(0, R.points[0].path);
  const std::vector<DirEdge> d1 = shifted(c1, R.points[1].path);

  // marking relative to the blueprint basis, based at the first attach point
  std::vector<EdgePath> m;
  for (std::size_t c = 0; c < R.cores.size(); ++c)
    for (const auto& l : R.cores[c].loops) {
      const auto& d = c == 0 ? d0 : d1;
      std::vector<DirEdge> p = cat(cat(inv(d), shifted(c, l.edges)), d);
      if (c == 1) p = cat(cat({DirEdge::forward(eps)}, p), {DirEdge::backward(eps)});
      m.push_back(EdgePath{q0, std::move(p)});
    }
  if (loop) m.push_back(EdgePath{q0, cat({DirEdge::forward(eps)}, cat(inv(d1), d0))});

  // natural structure; every attach vertex gains the new edge, so q0 stays natural
  auto ref = natural_structure(h);
  if (ref.vertex_map[q0] < 0) violated("retract_R: attach vertex vanished in the natural structure");
  std::vector<EdgePath> nm;
  for (const auto& p : m) nm.push_back(ref.push(p));
  MarkedGraph Y(ref.natural, ref.vertex_map[q0], std::move(nm));
  R.result = act(Y, bp.basis_change().inverse());
  R.natural_of.resize(eps);
  for (int e = 0; e < eps; ++e) R.natural_of[e] = ref.position[e].natural_edge;
  R.new_edge = ref.position[eps].natural_edge;

  if (!in_CVKT(R.result, bp)) violated("retract_R: output is not in the splitting's subcomplex");
  return R;
}

SplitAudit retraction_audit(const MarkedGraph& G, std::span<const int> forest, const SplittingBlueprint& bp) {
  require(is_forest(G.graph(), forest), "audit needs a forest of G");
  MarkedGraph Gc = collapse_marked(G, forest);
  SplitRetraction R = retract_R_full(G, bp);
  MarkedGraph Rc = retract_R(Gc, bp);

  std::vector<bool> in_f(G.graph().num_edges(), false);
  for (int e : forest) in_f[e] = true;
  const int NE = R.result.graph().num_edges();
  std::vector<int> total(NE, 0), inside(NE, 0);
  int off = 0;
  for (const auto& c : R.cores) {
    for (int e = 0; e < c.graph.num_edges(); ++e) {
      int ne = R.natural_of[off + e];
      ++total[ne];
      if (in_f[c.label[e].edge()]) ++inside[ne];
    }
    off += c.graph.num_edges();
  }
  SplitAudit out;
  for (int e = 0; e < NE; ++e)
    if (total[e] > 0 && inside[e] == total[e]) out.forest.push_back(e);
  MarkedGraph hull = out.forest.empty() ? R.result : collapse_marked(R.result, out.forest);
  if (equivalent(hull, Rc)) {
    out.distance = out.forest.empty() ? 0 : 1;
    return out;
  }
  // the hull did not explain the pair; measure adjacency directly
  out.hull = false;
  if (equivalent(R.result, Rc)) {
    out.distance = 0;
    return out;
  }
  auto adjacent = [](const MarkedGraph& big, const MarkedGraph& small) {
    if (big.graph().num_vertices() <= small.graph().num_vertices()) return false;
    for (const auto& f : enumerate_natural_subforests(big.graph(), false))
      if (equivalent(collapse_marked(big, f), small)) return true;
    return false;
  };
  out.distance = adjacent(R.result, Rc) || adjacent(Rc, R.result) ? 1 : 2;
  return out;
}

std::vector<int> split_audit_batch_serial(std::span<const SplitAuditCase> cases, const SplittingBlueprint& bp) {
  std::vector<int> d(cases.size(), -1);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    try {
      d[i] = retraction_audit(cases[i].G, cases[i].forest, bp).distance;
    } catch (const Error&) {
      d[i] = -1;
    }
  }
  return d;
}

std::vector<int> split_audit_batch(std::span<const SplitAuditCase> cases, const SplittingBlueprint& bp) {
  std::vector<int> d(cases.size(), -1);
  const long N = static_cast<long>(cases.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < N; ++i) {
    try {
      d[i] = retraction_audit(cases[i].G, cases[i].forest, bp).distance;
    } catch (const Error&) {
      d[i] = -1;
    }
  }
  return d;
}

}  // namespace outspace
