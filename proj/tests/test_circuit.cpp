#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fixtures.hpp"
#include "kc/circuit.hpp"
#include "kc/error.hpp"
#include "kc/io.hpp"
#include "kc/semantics.hpp"

using namespace kc;
using namespace kc::test;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected kc::Error");
  return Errc::BadParameters;
}

// Independent acyclicity + read-once check by explicit path enumeration.
bool read_once_by_paths(const Circuit& z, NodeId at, std::vector<Var>& seen) {
  const Node& n = z.node(at);
  if (n.is_sink()) return true;
  if (n.is_and()) return read_once_by_paths(z, n.low, seen) && read_once_by_paths(z, n.high, seen);
  if (std::find(seen.begin(), seen.end(), n.var) != seen.end()) return false;
  seen.push_back(n.var);
  const bool ok = read_once_by_paths(z, n.low, seen) && read_once_by_paths(z, n.high, seen);
  seen.pop_back();
  return ok;
}

}  // namespace

TEST_CASE("reference circuit builds with the expected variable sets") {
  const Circuit z = reference_circuit();
  CHECK(circuit_vars(z) == VarSet{0, 1, 2});
  const auto& vars = subcircuit_vars(z);
  CHECK(vars[z.root()] == VarSet{0, 1, 2});
  for (NodeId id = 0; id < z.num_nodes(); ++id) {
    const Node& n = z.node(id);
    if (n.is_sink()) CHECK(vars[id].empty());
    if (n.is_and()) {
      CHECK(vars[id] == VarSet{1, 2});
      CHECK(vars[n.left()] == VarSet{1});
      CHECK(vars[n.right()] == VarSet{2});
    }
  }
  CHECK(validate_decomposable(z).ok());
}

TEST_CASE("constant circuit has size zero") {
  auto names = make_registry({});
  const Circuit one = constant_circuit(true, {}, names);
  CHECK(size(one) == 0);
  CHECK(evaluate(one, Assignment{}));
  CHECK(subcircuit_vars(one)[one.root()].empty());
}

TEST_CASE("size counts edges") {
  auto names = make_registry({"x"});
  CircuitBuilder b(names);
  const NodeId root = b.decision(0, b.sink(false), b.sink(true));
  const Circuit z = std::move(b).build(root, VarSet{0});
  CHECK(size(z) == 2);
  CHECK(subcircuit_vars(z)[z.root()] == VarSet{0});
}

TEST_CASE("build_circuit rejects malformed node lists") {
  auto names = make_registry({"x", "y"});
  SUBCASE("repeated variable on a path") {
    std::vector<Node> nodes{Node::sink(false), Node::sink(true), Node::decision(0, 0, 1), Node::decision(0, 0, 2)};
    CHECK(code_of([&] { build_circuit(nodes, 3, VarSet{0, 1}, names); }) == Errc::RepeatedVariableOnPath);
  }
  SUBCASE("cycle") {
    std::vector<Node> nodes{Node::sink(true), Node::decision(0, 0, 2), Node::decision(1, 0, 1)};
    CHECK(code_of([&] { build_circuit(nodes, 1, VarSet{0, 1}, names); }) == Errc::CyclicGraph);
  }
  SUBCASE("dangling reference") {
    std::vector<Node> nodes{Node::sink(true), Node::decision(0, 0, 7)};
    CHECK(code_of([&] { build_circuit(nodes, 1, VarSet{0, 1}, names); }) == Errc::DanglingRef);
  }
  SUBCASE("decision variable outside the scope") {
    std::vector<Node> nodes{Node::sink(true), Node::decision(1, 0, 0)};
    CHECK(code_of([&] { build_circuit(nodes, 1, VarSet{0}, names); }) == Errc::ScopeViolation);
  }
  SUBCASE("redundant tests are allowed") {
    std::vector<Node> nodes{Node::sink(true), Node::decision(0, 0, 0)};
    CHECK(size(build_circuit(nodes, 1, VarSet{0}, names)) == 2);
  }
}

TEST_CASE("unreachable nodes are collected and ids compacted") {
  auto names = make_registry({"x"});
  std::vector<Node> nodes{Node::sink(false), Node::sink(true), Node::decision(0, 0, 1), Node::sink(true)};
  const Circuit z = build_circuit(nodes, 2, VarSet{0}, names);
  CHECK(z.num_nodes() == 3);
}

TEST_CASE("validate_decomposable reports the AND node and a shared variable") {
  auto names = make_registry({"x"});
  CircuitBuilder b(names);
  const NodeId a = b.decision(0, b.sink(false), b.sink(true));
  const NodeId c = b.decision(0, b.sink(true), b.sink(false));
  const NodeId root = b.conjunction(a, c);
  const Circuit z = std::move(b).build(root, VarSet{0});
  const auto report = validate_decomposable(z);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().kind == ViolationKind::Decomposability);
  CHECK(report.violations.front().witness.front() == z.root());
  CHECK(report.violations.front().detail.find('x') != std::string::npos);
  CHECK(code_of([&] { normalize(z); }) == Errc::NotDecomposable);
}

TEST_CASE("AND-free circuits are vacuously decomposable") {
  Rng rng(3);
  auto names = make_registry({"a", "b", "c", "d"});
  for (int i = 0; i < 20; ++i) CHECK(validate_decomposable(random_fbdd(rng, {0, 1, 2, 3}, names, names->all())).ok());
}

TEST_CASE("normalize copies shared sinks and keeps the function") {
  auto names = make_registry({"x", "y", "z"});
  CircuitBuilder b(names);
  const NodeId f = b.sink(false), t = b.sink(true);
  const NodeId a1 = b.conjunction(b.decision(1, f, t), b.decision(2, f, t));
  const NodeId a2 = b.conjunction(b.decision(1, t, f), b.decision(2, t, f));
  const Circuit z = std::move(b).build(b.decision(0, a1, a2), VarSet{0, 1, 2});
  const Circuit n = normalize(z);
  std::vector<int> fan_in(n.num_nodes(), 0);
  for (NodeId id : n.topological_order()) {
    const Node& node = n.node(id);
    if (!node.is_sink()) ++fan_in[node.low], ++fan_in[node.high];
  }
  for (NodeId id : n.topological_order())
    if (n.node(id).is_sink()) CHECK(fan_in[id] == 1);
  CHECK(size(n) <= 2 * size(z));
  CHECK(equivalent_bruteforce(z, n, z.scope()));
}

TEST_CASE("normalize on the reference circuit keeps three models and is idempotent") {
  const Circuit z = reference_circuit();
  const Circuit n = normalize(z);
  CHECK(model_count(n).count == 3);
  CHECK(equivalent_bruteforce(z, n, z.scope()));
  CHECK(isomorphic(normalize(n), n));
}

TEST_CASE("property: normalize preserves semantics, bounds size, separates AND children") {
  Rng rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 2 + pick(rng, 9);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
    auto names = make_registry(labels);
    std::vector<Var> vars(n);
    std::iota(vars.begin(), vars.end(), Var{0});
    const Vtree t = random_vtree(rng, vars, false);
    const Circuit z = random_structured(rng, t, names, names->all());
    const Circuit out = normalize(z);
    CHECK(truth_table(out, vars) == truth_table(z, vars));
    CHECK(size(out) <= 2 * size(z));
    // Node-disjoint sub-DAGs under every AND node.
    for (NodeId id : out.topological_order()) {
      const Node& node = out.node(id);
      if (!node.is_and()) continue;
      std::vector<char> mark(out.num_nodes(), 0);
      std::vector<NodeId> stack{node.left()};
      while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        if (mark[u]) continue;
        mark[u] = 1;
        if (!out.node(u).is_sink()) stack.push_back(out.node(u).low), stack.push_back(out.node(u).high);
      }
      stack = {node.right()};
      std::vector<char> seen(out.num_nodes(), 0);
      while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        if (seen[u]) continue;
        seen[u] = 1;
        CHECK_FALSE(mark[u]);
        if (!out.node(u).is_sink()) stack.push_back(out.node(u).low), stack.push_back(out.node(u).high);
      }
    }
  }
}

TEST_CASE("property: built circuits are read-once by path enumeration, vars monotone along edges") {
  Rng rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 1 + pick(rng, 7);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
    auto names = make_registry(labels);
    std::vector<Var> vars(n);
    std::iota(vars.begin(), vars.end(), Var{0});
    const Circuit z = random_structured(rng, random_vtree(rng, vars, false), names, names->all());
    std::vector<Var> seen;
    CHECK(read_once_by_paths(z, z.root(), seen));
    const auto& sv = subcircuit_vars(z);
    for (NodeId id : z.topological_order()) {
      const Node& node = z.node(id);
      if (node.is_sink()) continue;
      VarSet allowed = sv[id];
      if (node.is_decision()) allowed.erase(node.var);
      CHECK(sv[node.low].is_subset_of(allowed));
      CHECK(sv[node.high].is_subset_of(allowed));
    }
  }
}

TEST_CASE("merge_isomorphic preserves function and never grows") {
  Rng rng(8);
  auto names = make_registry({"a", "b", "c", "d", "e"});
  for (int i = 0; i < 50; ++i) {
    const Circuit z = random_and_obdd(rng, VariableOrder({0, 1, 2, 3, 4}), names, names->all());
    const Circuit m = merge_isomorphic(z);
    CHECK(size(m) <= size(z));
    CHECK(equivalent_bruteforce(z, m, z.scope()));
  }
}

TEST_CASE("circuit text format round-trips") {
  const Circuit z = reference_circuit();
  std::stringstream ss;
  write_circuit(ss, z);
  const Circuit back = read_circuit(ss);
  CHECK(isomorphic(z, back));
  CHECK(back.variables().name(0) == "x");
}

TEST_CASE("circuit text parser accepts comments, numeric vars and a scope line") {
  std::stringstream in(
      "# two-node circuit\n"
      "afbdd 3 2\n"
      "v a 0\nv b 1\n"
      "scope a\n"
      "S 0 0\nS 1 1\n"
      "D 2 0 0 1   # numeric variable id\n");
  const Circuit z = read_circuit(in);
  CHECK(z.scope() == VarSet{0});
  CHECK(model_count(z).count == 1);
}

TEST_CASE("circuit text parser errors") {
  auto parse = [](const std::string& text) {
    std::stringstream in(text);
    return read_circuit(in);
  };
  CHECK(code_of([&] { parse("afbdd 2 1\nS 0 1\nD 1 q 0 0\n"); }) == Errc::ParseError);
  CHECK(code_of([&] { parse("afbdd 2 1\nv x 0\nS 0 1\nD 1 x 0 5\n"); }) == Errc::DanglingRef);
  CHECK(code_of([&] { parse("afbdd 3 2\nv x 0\nS 0 1\nD 2 x 0 1\n"); }) == Errc::DanglingRef);
  CHECK(code_of([&] { parse("S 0 1\n"); }) == Errc::ParseError);
  CHECK(code_of([&] { parse("afbdd 1 0\nS 0 1\nv x 0\n"); }) == Errc::ParseError);
}

TEST_CASE("DOT export names every node") {
  std::stringstream ss;
  write_circuit_dot(ss, reference_circuit());
  const std::string dot = ss.str();
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("AND") != std::string::npos);
  CHECK(dot.find("label=\"x\"") != std::string::npos);
}
