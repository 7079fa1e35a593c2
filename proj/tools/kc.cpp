// Command-line front end. Exit codes: 0 ok, 1 violation found, 2 usage or
// input error.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kc/compiler.hpp"
#include "kc/error.hpp"
#include "kc/experiment.hpp"
#include "kc/instances.hpp"
#include "kc/io.hpp"
#include "kc/obdd.hpp"
#include "kc/semantics.hpp"
#include "kc/split_matching.hpp"
#include "kc/structure.hpp"
#include "kc/transforms.hpp"

namespace {

using namespace kc;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BadParameters, "cannot open '" + path + "'");
  return in;
}

std::string slurp(const std::string& path) {
  auto in = open_in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph load_graph(const std::string& path) {
  auto in = open_in(path);
  return read_edge_list(in);
}

CnfFormula load_cnf(const std::string& path) {
  auto in = open_in(path);
  return read_dimacs(in);
}

Circuit load_circuit(const std::string& path) {
  auto in = open_in(path);
  return read_circuit(in);
}

// Writes to `path`, or stdout when it is empty or "-".
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(Errc::BadParameters, "cannot write '" + path + "'");
  write(out);
}

Assignment parse_assignment(const std::string& text, const VariableRegistry& names) {
  Assignment tau;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(Errc::BadParameters, "expected name=0|1, got '" + item + "'");
    const std::string value = item.substr(eq + 1);
    if (value != "0" && value != "1") throw Error(Errc::BadParameters, "value of '" + item.substr(0, eq) + "' must be 0 or 1");
    tau.set(names.id(item.substr(0, eq)), value == "1");
  }
  return tau;
}

void print_report(const ValidationReport& r, const std::string& what) {
  if (r.ok()) {
    std::cout << what << ": ok\n";
    return;
  }
  for (const auto& v : r.violations) {
    std::cout << what << ": " << to_string(v.kind) << " witness";
    for (NodeId id : v.witness) std::cout << ' ' << id;
    if (!v.detail.empty()) std::cout << " (" << v.detail << ')';
    std::cout << '\n';
  }
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::ParseError:
    case Errc::ConfigError:
    case Errc::BadParameters:
    case Errc::ScopeTooLarge:
      return kUsage;
    default:
      return kViolation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-compilation toolkit: circuits, CNF instance families, compilation and OBDD oracles"};
  app.require_subcommand(1);
  int status = kOk;

  // gen-graph
  std::string family = "cycle", graph_format = "edges", decomposition_out, out_path;
  std::size_t gen_n = 4, gen_k = 2, gen_h = 2;
  std::uint64_t seed = 1;
  double keep = 0.7, edge_p = 0.3;
  auto* gen_graph = app.add_subcommand("gen-graph", "Generate a graph and a decomposition witness");
  gen_graph->add_option("--family", family, "cycle|path|grid|complete|disjoint_edges|ktree|random")->capture_default_str();
  gen_graph->add_option("-n,--n", gen_n, "Vertices (columns for grid, edges for disjoint_edges)")->capture_default_str();
  gen_graph->add_option("-k,--k", gen_k, "Width for ktree")->capture_default_str();
  gen_graph->add_option("--rows", gen_h, "Rows for grid")->capture_default_str();
  gen_graph->add_option("--keep", keep, "Edge retention probability for ktree")->capture_default_str();
  gen_graph->add_option("--p", edge_p, "Extra edge probability for random")->capture_default_str();
  gen_graph->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen_graph->add_option("--format", graph_format, "edges|dot")->capture_default_str();
  gen_graph->add_option("--decomposition", decomposition_out, "Write the decomposition witness here");
  gen_graph->add_option("-o,--output", out_path, "Output file (default stdout)");
  gen_graph->callback([&] {
    GraphWithDecomposition gd;
    if (family == "cycle") gd = cycle_with_decomposition(gen_n);
    else if (family == "path") gd = path_with_decomposition(gen_n);
    else if (family == "grid") gd = grid_with_decomposition(gen_n, gen_h);
    else if (family == "complete") gd = complete_with_decomposition(gen_n);
    else if (family == "disjoint_edges") gd = disjoint_edges_with_decomposition(gen_n);
    else if (family == "ktree") gd = random_partial_ktree(gen_n, gen_k, seed, keep);
    else if (family == "random") gd.graph = random_connected_graph(gen_n, edge_p, seed);
    else throw Error(Errc::BadParameters, "unknown family '" + family + "'");
    if (graph_format != "edges" && graph_format != "dot") throw Error(Errc::BadParameters, "format must be edges or dot");
    emit(out_path, [&](std::ostream& o) {
      if (graph_format == "dot") write_dot(o, gd.graph);
      else write_edge_list(o, gd.graph);
    });
    if (!decomposition_out.empty()) {
      if (gd.decomposition.bags.empty()) throw Error(Errc::BadParameters, "family '" + family + "' carries no witness");
      emit(decomposition_out, [&](std::ostream& o) { write_decomposition(o, gd.graph, gd.decomposition); });
    }
  });

  // gen-cnf
  std::string cnf_kind, graph_path;
  auto* gen_cnf = app.add_subcommand("gen-cnf", "Build F_G (fg) or its doubled variant (f2g) as DIMACS");
  gen_cnf->add_option("kind", cnf_kind, "fg|f2g")->required()->check(CLI::IsMember({"fg", "f2g"}));
  gen_cnf->add_option("--graph", graph_path, "Edge-list file")->required();
  gen_cnf->add_option("-o,--output", out_path, "Output file (default stdout)");
  gen_cnf->callback([&] {
    const Graph g = load_graph(graph_path);
    const CnfFormula f = cnf_kind == "fg" ? build_f_g(g) : build_f2_g(g);
    emit(out_path, [&](std::ostream& o) { write_dimacs(o, f); });
  });

  // compile
  std::string cnf_path, order_text, heuristic = "min_degree";
  bool no_cache = false, no_split = false, as_dot = false;
  auto* compile_cmd = app.add_subcommand("compile", "Exhaustive DPLL compilation of a DIMACS CNF");
  compile_cmd->add_option("--cnf", cnf_path, "DIMACS file")->required();
  compile_cmd->add_option("--order", order_text, "Fixed variable order, e.g. x,y,z");
  compile_cmd->add_option("--heuristic", heuristic, "min_degree|lex_first (without --order)")
      ->check(CLI::IsMember({"min_degree", "lex_first"}))
      ->capture_default_str();
  compile_cmd->add_flag("--no-cache", no_cache, "Disable residual-formula caching");
  compile_cmd->add_flag("--no-split", no_split, "Disable component splitting");
  compile_cmd->add_flag("--dot", as_dot, "Emit DOT instead of circuit text");
  compile_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");
  compile_cmd->callback([&] {
    const CnfFormula f = load_cnf(cnf_path);
    CompileConfig cfg;
    if (!order_text.empty()) cfg.mode = VariableOrder::parse(order_text, f.variables());
    else cfg.mode = heuristic == "lex_first" ? Heuristic::LexFirst : Heuristic::MinDegree;
    cfg.caching = no_cache ? Caching::Off : Caching::ResidualFormulaKey;
    cfg.component_split = !no_split;
    const Circuit z = compile(f, cfg);
    emit(out_path, [&](std::ostream& o) {
      if (as_dot) write_circuit_dot(o, z);
      else write_circuit(o, z);
    });
  });

  // count
  std::string circuit_path;
  bool brute = false;
  auto* count_cmd = app.add_subcommand("count", "Model count of a circuit or a CNF");
  std::string scope_text;
  auto* count_circuit = count_cmd->add_option("circuit,--circuit", circuit_path, "Circuit text file");
  auto* count_cnf = count_cmd->add_option("--cnf", cnf_path, "DIMACS file (compiled first)");
  count_circuit->excludes(count_cnf);
  count_cmd->add_option("--scope", scope_text, "Comma-separated variables to count over (default: circuit scope)")
      ->excludes(count_cnf);
  count_cmd->add_flag("--brute", brute, "Also count by enumeration and compare");
  count_cmd->callback([&] {
    if (circuit_path.empty() && cnf_path.empty()) throw CLI::ValidationError("count", "need --circuit or --cnf");
    if (!circuit_path.empty()) {
      const Circuit z = load_circuit(circuit_path);
      const VarSet scope = scope_text.empty() ? z.scope() : VariableOrder::parse(scope_text, z.variables()).vars();
      const auto c = model_count(z, scope);
      std::cout << c.count << '\n';
      if (brute) {
        BigInt check = 0;
        const auto vars = scope.to_vector();
        if (vars.size() > kBruteForceLimit) throw Error(Errc::ScopeTooLarge, "scope too large for --brute");
        for_each_assignment(vars, [&](const Assignment& a) { check += evaluate(z, a) ? 1 : 0; });
        std::cout << "bruteforce " << check << '\n';
        if (check != c.count) status = kViolation;
      }
    } else {
      const CnfFormula f = load_cnf(cnf_path);
      const auto c = model_count(compile(f));
      std::cout << c.count << '\n';
      if (brute) {
        const auto b = cnf_count_bruteforce(f);
        std::cout << "bruteforce " << b.count << '\n';
        if (b.count != c.count) status = kViolation;
      }
    }
  });

  // eval
  std::string assignment_text;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a circuit on a total assignment");
  eval_cmd->add_option("circuit,--circuit", circuit_path, "Circuit text file")->required();
  eval_cmd->add_option("--assign", assignment_text, "name=0|1,... covering the scope")->required();
  eval_cmd->callback([&] {
    const Circuit z = load_circuit(circuit_path);
    std::cout << (evaluate(z, parse_assignment(assignment_text, z.variables())) ? 1 : 0) << '\n';
  });

  // validate
  std::string vtree_text, decomposition_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check circuit or decomposition invariants");
  bool want_decomposable = false, want_read_once = false;
  validate_cmd->add_option("circuit,--circuit", circuit_path, "Circuit text file");
  validate_cmd->add_flag("--decomposable", want_decomposable, "Check decomposability of AND nodes");
  validate_cmd->add_flag("--read-once", want_read_once, "Report the read-once check (always run on load)");
  validate_cmd->add_option("--order", order_text, "Check that the circuit respects this order");
  validate_cmd->add_option("--vtree", vtree_text, "Check that the circuit respects this vtree, e.g. \"(x (y z))\"");
  validate_cmd->add_option("--graph", graph_path, "Edge-list file (with --decomposition)");
  validate_cmd->add_option("--decomposition", decomposition_path, "Decomposition file");
  validate_cmd->callback([&] {
    if (!decomposition_path.empty()) {
      if (graph_path.empty()) throw CLI::ValidationError("validate", "--decomposition needs --graph");
      const Graph g = load_graph(graph_path);
      auto in = open_in(decomposition_path);
      const auto d = read_decomposition(in, g);
      std::cout << "decomposition: ok, width " << validate_decomposition(g, d) << '\n';
    }
    if (!circuit_path.empty()) {
      // Loading rejects cycles and repeated variables on a path, so a
      // read-once failure surfaces as an error with exit code 1.
      const Circuit z = load_circuit(circuit_path);
      const bool all = !want_decomposable && !want_read_once && order_text.empty() && vtree_text.empty();
      if (want_read_once || all) std::cout << "read-once: ok\n";
      if (want_decomposable || all) {
        const auto dec = validate_decomposable(z);
        print_report(dec, "decomposable");
        if (!dec.ok()) status = kViolation;
      }
      if (!order_text.empty()) {
        const auto r = respects_order(z, VariableOrder::parse(order_text, z.variables()));
        print_report(r, "order");
        if (!r.ok()) status = kViolation;
      }
      if (!vtree_text.empty()) {
        const auto r = respects_vtree(z, Vtree::parse(vtree_text, z.variables()));
        print_report(r, "vtree");
        if (!r.ok()) status = kViolation;
      }
    }
    if (circuit_path.empty() && decomposition_path.empty())
      throw CLI::ValidationError("validate", "need --circuit or --graph/--decomposition");
  });

  // transform
  std::string trace_path;
  auto* transform = app.add_subcommand("transform", "Circuit transformations");
  transform->require_subcommand(1);
  auto* linearize_cmd = transform->add_subcommand("linearize", "Remove AND nodes under a linear vtree");
  linearize_cmd->add_option("--circuit", circuit_path, "Circuit text file")->required();
  linearize_cmd->add_option("--vtree", vtree_text, "Linear vtree respected by the circuit")->required();
  linearize_cmd->add_option("--trace", trace_path, "Write the JSON trace here (default stderr)");
  linearize_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");
  linearize_cmd->callback([&] {
    const Circuit z = load_circuit(circuit_path);
    const auto r = linearize(z, Vtree::parse(vtree_text, z.variables()));
    emit(out_path, [&](std::ostream& o) { write_circuit(o, r.circuit); });
    const std::string json = trace_to_json(r.trace);
    if (trace_path.empty()) std::cerr << json << '\n';
    else emit(trace_path, [&](std::ostream& o) { o << json << '\n'; });
  });
  auto* strip_cmd = transform->add_subcommand("strip-guard", "FBDD for F_G to FBDD for its edge clauses");
  strip_cmd->add_option("--circuit", circuit_path, "FBDD computing F_G")->required();
  strip_cmd->add_option("--graph", graph_path, "Edge-list file of G")->required();
  strip_cmd->add_option("--order", order_text, "Vertex order (default: graph order)");
  strip_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");
  strip_cmd->callback([&] {
    const Circuit z = load_circuit(circuit_path);
    const Graph g = load_graph(graph_path);
    VariableOrder o;
    if (!order_text.empty()) {
      o = VariableOrder::parse(order_text, z.variables());
    } else {
      std::vector<Var> seq;
      for (Vertex v = 0; v < g.num_vertices(); ++v) seq.push_back(z.variables().id(g.name(v)));
      o = VariableOrder(std::move(seq));
    }
    const Circuit out = strip_guard_clause(z, o);
    emit(out_path, [&](std::ostream& os) { write_circuit(os, out); });
    std::cerr << "size " << size(z) << " -> " << size(out) << '\n';
  });

  // min-obdd
  auto* min_obdd_cmd = app.add_subcommand("min-obdd", "Smallest reduced OBDD over all orders (at most 8 variables)");
  min_obdd_cmd->add_option("--cnf", cnf_path, "DIMACS file")->required();
  min_obdd_cmd->callback([&] {
    const CnfFormula f = load_cnf(cnf_path);
    const auto r = min_obdd_size(f);
    std::cout << "size " << r.size << "\norder " << r.best_order.format(f.variables()) << '\n';
  });

  // split-matching
  std::string order_kind = "separated";
  auto* split_cmd = app.add_subcommand("split-matching", "Largest straddling induced matching and the OBDD size check");
  split_cmd->add_option("--graph", graph_path, "Edge-list file")->required();
  split_cmd->add_option("--order", order_text, "Order over the doubled variables <v>_1, <v>_2");
  split_cmd->add_option("--order-kind", order_kind, "natural|separated|random (without --order)")
      ->check(CLI::IsMember({"natural", "separated", "random"}))
      ->capture_default_str();
  split_cmd->add_option("--seed", seed, "Seed for --order-kind random")->capture_default_str();
  split_cmd->callback([&] {
    const Graph g = load_graph(graph_path);
    const CnfFormula f = build_f2_g(g);
    VariableOrder o;
    if (!order_text.empty()) {
      o = VariableOrder::parse(order_text, f.variables());
    } else {
      const OrderKind k = order_kind == "natural" ? OrderKind::Natural
                          : order_kind == "random" ? OrderKind::Random
                                                   : OrderKind::Separated;
      o = experiment_order(k, g.num_vertices(), seed);
    }
    const auto report = split_bound_check(g, o);
    const auto& w = report.witness;
    const char* near = w.colour == 1 ? "_1" : "_2";
    const char* far = w.colour == 1 ? "_2" : "_1";
    std::cout << "order " << o.format(f.variables()) << '\n';
    std::cout << "pivot " << f.variables().name(w.pivot) << "\nmatching";
    for (const auto& p : w.pairs) std::cout << " (" << g.name(p.v) << near << ',' << g.name(p.w) << far << ')';
    std::cout << "\nsize " << w.size() << "\nbound " << w.bound << "\nreduced_obdd_size " << report.reduced_size
              << "\nholds " << (report.holds() ? "true" : "false") << '\n';
    if (!report.holds()) status = kViolation;
  });

  // experiment
  std::string config_path;
  std::vector<std::uint64_t> seed_override;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run an experiment sweep and emit CSV");
  experiment_cmd->add_option("--config", config_path, "JSON or key = value file")->required();
  std::size_t threads = 0;
  auto* threads_opt = experiment_cmd->add_option("--threads", threads, "Worker threads (0: one per core)");
  experiment_cmd->add_option("--seed", seed_override, "Replace the configured seeds");
  experiment_cmd->add_option("-o,--output", out_path, "CSV file (default stdout)");
  experiment_cmd->callback([&] {
    ExperimentConfig cfg = parse_experiment_config(slurp(config_path));
    if (!seed_override.empty()) cfg.seeds = seed_override;
    if (threads_opt->count() > 0) cfg.threads = threads;
    const auto rows = run_experiment(cfg);
    emit(out_path, [&](std::ostream& o) { write_experiment_csv(o, rows); });
    for (const auto& r : rows)
      if (r.bound_holds == false || !r.full_decision_path) status = kViolation;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return status;
}
