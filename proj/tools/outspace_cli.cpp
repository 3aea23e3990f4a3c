// outspace: command line front end. Graph arguments are marked-graph files, or "rose:N".
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "outspace/acceptance.hpp"
#include "outspace/counting.hpp"
#include "outspace/covers.hpp"
#include "outspace/error.hpp"
#include "outspace/retract_aut.hpp"
#include "outspace/retract_split.hpp"
#include "outspace/spine.hpp"
#include "outspace/text_format.hpp"
#include "outspace/witness.hpp"

using namespace outspace;

namespace {

MarkedGraph load_graph(const std::string& arg) {
  if (arg.rfind("rose:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(arg.substr(5));
    } catch (const std::exception&) {
      fail("bad rose rank in '" + arg + "'");
    }
    require(n >= 1, "rose rank must be >= 1");
    return MarkedGraph::rose(n);
  }
  return parse_marked(read_file(arg));
}

// inline text unless it names a readable file
std::string text_or_file(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

std::vector<int> parse_forest(const Graph& g, const std::string& text) {
  std::vector<int> f;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (!tok.empty() && tok.back() == ',') tok.pop_back();
    if (tok.empty()) continue;
    auto e = g.find_edge(tok);
    if (!e) fail("unknown edge '" + tok + "'");
    f.push_back(*e);
  }
  if (!is_forest(g, f)) fail("edges do not form a forest");
  return f;
}

std::string edge_list(const Graph& g, const std::vector<int>& edges) {
  std::string s;
  for (std::size_t i = 0; i < edges.size(); ++i) s += (i ? " " : "") + g.edge_name(edges[i]);
  return s;
}

int rank_of(int given, std::initializer_list<std::string> texts) {
  if (given > 0) return given;
  int n = 0;
  for (const auto& t : texts) n = std::max(n, max_letter_index(t));
  require(n >= 1, "cannot infer the rank; pass --n");
  return n;
}

std::string format_core(const SubgroupGraph& K, const Graph& ambient) {
  std::ostringstream os;
  os << "core {\n  rank: " << K.rank() << ";\n  v:";
  for (int v = 0; v < K.graph.num_vertices(); ++v) os << ' ' << K.graph.vertex_name(v);
  os << ";\n";
  for (int e = 0; e < K.graph.num_edges(); ++e)
    os << "  " << K.graph.edge_name(e) << ' ' << K.graph.vertex_name(K.graph.origin(e)) << ' '
       << K.graph.vertex_name(K.graph.terminus(e)) << " -> " << ambient.dir_name(K.label[e]) << ";\n";
  if (K.base >= 0) os << "  basepoint: " << K.graph.vertex_name(K.base) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the spine of outer space"};
  app.require_subcommand(1);

  int n = 0;
  std::string word, phi, f_text, g_text, graph, other, forest, gens, system, a_text, b_text, blueprint;
  bool based = false, embed = false;

  auto* reduce_cmd = app.add_subcommand("reduce", "freely reduce a word");
  reduce_cmd->add_option("--n", n, "rank");
  reduce_cmd->add_option("--word", word)->required();

  auto* apply_cmd = app.add_subcommand("apply", "apply an endomorphism to a word");
  apply_cmd->add_option("--n", n);
  apply_cmd->add_option("--phi", phi, "images separated by ';'")->required();
  apply_cmd->add_option("--word", word)->required();

  auto* compose_cmd = app.add_subcommand("compose", "f after g");
  compose_cmd->add_option("--n", n);
  compose_cmd->add_option("--f", f_text)->required();
  compose_cmd->add_option("--g", g_text)->required();

  auto* is_auto_cmd = app.add_subcommand("is-auto", "decide invertibility; prints the inverse");
  is_auto_cmd->add_option("--n", n);
  is_auto_cmd->add_option("--phi", phi)->required();

  auto* collapse_cmd = app.add_subcommand("collapse", "collapse a forest");
  collapse_cmd->add_option("--graph", graph)->required();
  collapse_cmd->add_option("--forest", forest, "edge names")->required();

  auto* blowups_cmd = app.add_subcommand("blowups", "all single-edge blow-ups");
  blowups_cmd->add_option("--graph", graph)->required();

  auto* equiv_cmd = app.add_subcommand("equiv", "decide equivalence of marked graphs");
  equiv_cmd->add_option("--graph", graph)->required();
  equiv_cmd->add_option("--other", other)->required();

  auto* act_cmd = app.add_subcommand("act", "right action of an automorphism");
  act_cmd->add_option("--graph", graph)->required();
  act_cmd->add_option("--phi", phi)->required();

  auto* circuit_cmd = app.add_subcommand("circuit", "immersed circuit of a conjugacy class");
  circuit_cmd->add_option("--graph", graph)->required();
  circuit_cmd->add_option("--word", word)->required();

  auto* core_cmd = app.add_subcommand("core", "Stallings core of a subgroup");
  core_cmd->add_option("--graph", graph)->required();
  core_cmd->add_option("--gens", gens, "comma separated")->required();
  core_cmd->add_flag("--based", based);

  auto* realizes_cmd = app.add_subcommand("realizes", "core subgraph realizing a free factor system");
  realizes_cmd->add_option("--graph", graph)->required();
  realizes_cmd->add_option("--system", system, "\"a1 | a2, a3\"")->required();

  auto* coindex_cmd = app.add_subcommand("coindex", "coindex of a free factor system");
  coindex_cmd->add_option("--n", n)->required();
  coindex_cmd->add_option("--system", system)->required();

  auto* count_cmd = app.add_subcommand("count-i", "crossing count i_{A,B}(c, G)");
  count_cmd->add_option("--graph", graph)->required();
  count_cmd->add_option("--A", a_text, "free factor system")->required();
  count_cmd->add_option("--B", b_text, "generators, comma separated")->required();
  count_cmd->add_option("--word", word, "representative of c")->required();

  auto* lip_cmd = app.add_subcommand("lipschitz-audit", "i before and after a collapse; exit 3 outside [i, i+2]");
  lip_cmd->add_option("--graph", graph)->required();
  lip_cmd->add_option("--A", a_text)->required();
  lip_cmd->add_option("--B", b_text)->required();
  lip_cmd->add_option("--word", word)->required();
  lip_cmd->add_option("--forest", forest)->required();

  int wcase = 1, wr = 1, kmax = 10;
  std::vector<int> ranks;
  std::string set_name = "transvections";
  auto* witness_cmd = app.add_subcommand("witness", "distortion CSV for the witness family");
  witness_cmd->add_option("--case", wcase)->check(CLI::Range(1, 3));
  witness_cmd->add_option("--n", n)->required();
  witness_cmd->add_option("--r", wr, "rank of A (case 1)");
  witness_cmd->add_option("--ranks", ranks, "component ranks (cases 2, 3)")->delimiter(',');
  witness_cmd->add_option("--kmax", kmax);
  witness_cmd->add_option("--set", set_name, "transvections or classical");

  auto* raut_cmd = app.add_subcommand("retract-aut", "retraction r of the based spine");
  raut_cmd->add_option("--graph", graph)->required();
  raut_cmd->add_flag("--embed-j", embed, "apply j first");

  auto* raut_audit_cmd = app.add_subcommand("retract-aut-audit", "distance between r(x) and r(x/F)");
  raut_audit_cmd->add_option("--graph", graph)->required();
  raut_audit_cmd->add_option("--forest", forest)->required();

  auto* rsplit_cmd = app.add_subcommand("retract-split", "retraction onto the splitting subcomplex");
  rsplit_cmd->add_option("--graph", graph)->required();
  rsplit_cmd->add_option("--blueprint", blueprint, "text or file")->required();

  auto* member_cmd = app.add_subcommand("split-membership", "decide membership in the splitting subcomplex");
  member_cmd->add_option("--graph", graph)->required();
  member_cmd->add_option("--blueprint", blueprint)->required();

  auto* rsplit_audit_cmd = app.add_subcommand("retract-split-audit", "distance between R(G) and R(G/F)");
  rsplit_audit_cmd->add_option("--graph", graph)->required();
  rsplit_audit_cmd->add_option("--forest", forest)->required();
  rsplit_audit_cmd->add_option("--blueprint", blueprint)->required();

  int cap = 6, radius = -1;
  auto* bfs_cmd = app.add_subcommand("spine-bfs", "exact spine distance, or ball size with --radius");
  bfs_cmd->add_option("--graph", graph)->required();
  bfs_cmd->add_option("--other", other);
  bfs_cmd->add_option("--cap", cap);
  bfs_cmd->add_option("--radius", radius);

  auto* fold_cmd = app.add_subcommand("fold-path", "certified path from folding");
  fold_cmd->add_option("--graph", graph)->required();
  fold_cmd->add_option("--other", other)->required();
  fold_cmd->add_option("--system", system, "free factor system to guard");

  AcceptanceOptions acc;
  auto* self_cmd = app.add_subcommand("selftest", "run the acceptance criteria");
  self_cmd->add_option("--seed", acc.seed);
  self_cmd->add_option("--only", acc.only)->delimiter(',')->check(CLI::Range(1, 10));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    auto& out = std::cout;
    if (*reduce_cmd) {
      out << parse_word(rank_of(n, {word}), word).str() << "\n";
    } else if (*apply_cmd) {
      int r = rank_of(n, {phi, word});
      out << parse_endomorphism(r, phi).apply(parse_word(r, word)).str() << "\n";
    } else if (*compose_cmd) {
      int r = rank_of(n, {f_text, g_text});
      out << compose(parse_endomorphism(r, f_text), parse_endomorphism(r, g_text)).str() << "\n";
    } else if (*is_auto_cmd) {
      int r = rank_of(n, {phi});
      auto inv = is_automorphism(parse_endomorphism(r, phi));
      if (inv)
        out << "automorphism\ninverse: " << inv->str() << "\n";
      else
        out << "not an automorphism\n";
    } else if (*collapse_cmd) {
      auto G = load_graph(graph);
      out << format_marked(collapse_marked(G, parse_forest(G.graph(), forest)));
    } else if (*blowups_cmd) {
      auto G = load_graph(graph);
      auto bs = enumerate_blowups(G.graph());
      out << "# " << bs.size() << " blow-ups\n";
      for (const auto& b : bs) {
        out << "# at " << G.graph().vertex_name(b.vertex) << ", new edge " << b.graph.edge_name(b.new_edge) << "\n";
        out << format_marked(lift_blowup(G, b));
      }
    } else if (*equiv_cmd) {
      auto eq = equivalent(load_graph(graph), load_graph(other));
      if (eq)
        out << "equivalent\nconjugator: " << eq->conjugator.str() << "\n";
      else
        out << "not equivalent\n";
    } else if (*act_cmd) {
      auto G = load_graph(graph);
      out << format_marked(act(G, parse_endomorphism(G.rank(), phi)));
    } else if (*circuit_cmd) {
      auto G = load_graph(graph);
      auto c = circuit_of(G, parse_word(G.rank(), word));
      std::string s;
      for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + G.graph().dir_name(c[i]);
      out << (c.empty() ? "1" : s) << "\n" << "length " << c.size() << "\n";
    } else if (*core_cmd) {
      auto G = load_graph(graph);
      out << format_core(stallings_core(parse_word_list(G.rank(), gens), G, based), G.graph());
    } else if (*realizes_cmd) {
      auto G = load_graph(graph);
      auto w = realizes(G, FreeFactorSystem::parse(G.rank(), system));
      if (w) {
        out << "realizes\nedges: " << edge_list(G.graph(), w->edges) << "\n";
        for (std::size_t k = 0; k < w->components.size(); ++k)
          out << "component " << k + 1 << ": " << edge_list(G.graph(), w->components[k]) << "\n";
      } else {
        out << "does not realize\n";
      }
    } else if (*coindex_cmd) {
      out << coindex(FreeFactorSystem::parse(n, system)) << "\n";
    } else if (*count_cmd) {
      auto G = load_graph(graph);
      auto A = FreeFactorSystem::parse(G.rank(), a_text);
      auto B = parse_word_list(G.rank(), b_text);
      auto ctx = build_context(A, B, G);
      out << count_i(ctx, CyclicWord::of(parse_word(G.rank(), word))).value << "\n";
    } else if (*lip_cmd) {
      auto G = load_graph(graph);
      auto A = FreeFactorSystem::parse(G.rank(), a_text);
      auto B = parse_word_list(G.rank(), b_text);
      auto [i0, i1] =
          lipschitz_audit(A, B, G, parse_forest(G.graph(), forest), CyclicWord::of(parse_word(G.rank(), word)));
      out << "i = " << i0 << "\ni' = " << i1 << "\n";
      if (i1 < i0 || i1 > i0 + 2) violated("collapse moved i outside [i, i+2]");
    } else if (*witness_cmd) {
      WitnessParams P;
      if (wcase == 1) {
        P = WitnessParams::connected(n, wr);
      } else if (wcase == 2) {
        require(ranks.size() == 2, "case 2 needs --ranks r0,r1");
        P = WitnessParams::two_component(n, ranks[0], ranks[1]);
      } else {
        require(ranks.size() >= 2, "case 3 needs --ranks with at least two entries");
        P = WitnessParams::multi_component(n, ranks);
      }
      auto csv = distortion_report(P, kmax, parse_nielsen_set(set_name)).csv();
      out << csv;
      if (const char* dir = std::getenv("OUTSPACE_OUT_DIR")) {
        auto path = std::filesystem::path(dir) /
                    ("witness_case" + std::to_string(wcase) + "_n" + std::to_string(n) + "_" + set_name + ".csv");
        std::ofstream f(path);
        if (!f) fail("cannot write " + path.string());
        f << csv;
      }
    } else if (*raut_cmd) {
      auto x = PointedMarkedGraph(load_graph(graph));
      if (embed) x = embed_j(x);
      out << format_marked(retract_r(x).marked());
    } else if (*raut_audit_cmd) {
      auto x = PointedMarkedGraph(load_graph(graph));
      auto a = lipschitz_audit(x, parse_forest(x.graph(), forest));
      out << "distance " << a.distance << "\n";
    } else if (*rsplit_cmd) {
      auto bp = SplittingBlueprint::parse(text_or_file(blueprint));
      out << format_marked(retract_R(load_graph(graph), bp));
    } else if (*member_cmd) {
      auto bp = SplittingBlueprint::parse(text_or_file(blueprint));
      auto G = load_graph(graph);
      auto w = in_CVKT(G, bp);
      if (w)
        out << "member\nedge: " << G.graph().edge_name(w->edge) << "\n";
      else
        out << "not a member\n";
    } else if (*rsplit_audit_cmd) {
      auto bp = SplittingBlueprint::parse(text_or_file(blueprint));
      auto G = load_graph(graph);
      auto a = retraction_audit(G, parse_forest(G.graph(), forest), bp);
      out << "distance " << a.distance << "\n";
    } else if (*bfs_cmd) {
      auto G = load_graph(graph);
      if (radius >= 0) {
        out << "ball " << radius << ": " << ball_size(G, radius) << "\n";
      } else {
        require(!other.empty(), "spine-bfs needs --other or --radius");
        auto p = bfs_path(G, load_graph(other), cap);
        if (!p) {
          out << "distance > " << cap << "\n";
        } else {
          out << "distance " << p->length() << "\n" << p->dump();
        }
      }
    } else if (*fold_cmd) {
      auto G = load_graph(graph);
      std::optional<FreeFactorSystem> F;
      if (!system.empty()) F = FreeFactorSystem::parse(G.rank(), system);
      auto p = fold_path(G, load_graph(other), F ? &*F : nullptr);
      if (!p.verify()) violated("fold path failed verification");
      out << "length " << p.length() << "\n";
      if (F) out << "guarded " << (p.guarded ? "yes" : "no") << "\n";
      if (!p.note.empty()) out << "note: " << p.note << "\n";
      out << p.dump();
    } else if (*self_cmd) {
      int failed = 0;
      for (const auto& r : run_acceptance(acc, out)) failed += !r.pass;
      if (failed) {
        std::cerr << "error: invariant: " << failed << " criteria failed\n";
        return 3;
      }
    }
  } catch (const Error& e) {
    bool inv = e.kind() == ErrorKind::invariant;
    std::cerr << "error: " << (inv ? "invariant" : "precondition") << ": " << e.what() << "\n";
    return inv ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: precondition: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
