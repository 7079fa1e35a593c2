#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "kc/cnf.hpp"
#include "kc/compiler.hpp"
#include "kc/error.hpp"
#include "kc/instances.hpp"
#include "kc/semantics.hpp"

using namespace kc;
using namespace kc::test;

namespace {

Assignment assign(std::initializer_list<std::pair<Var, bool>> kv) {
  Assignment a;
  for (auto [v, b] : kv) a.set(v, b);
  return a;
}

std::vector<Var> iota_vars(std::size_t n) {
  std::vector<Var> v(n);
  std::iota(v.begin(), v.end(), Var{0});
  return v;
}

std::shared_ptr<VariableRegistry> numbered(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  return make_registry(labels);
}

}  // namespace

TEST_CASE("reference circuit evaluation") {
  const Circuit z = reference_circuit();
  CHECK(evaluate(z, assign({{0, false}, {1, true}, {2, true}})));
  CHECK_FALSE(evaluate(z, assign({{0, true}, {1, true}, {2, true}})));
  // Exactly-two-of-three everywhere.
  for_each_assignment(iota_vars(3), [&](const Assignment& a) {
    const int sum = a.value(0) + a.value(1) + a.value(2);
    CHECK(evaluate(z, a) == (sum == 2));
  });
}

TEST_CASE("evaluate needs a total assignment; constant zero rejects everything") {
  const Circuit z = reference_circuit();
  CHECK_THROWS_AS(evaluate(z, assign({{0, true}})), Error);
  auto names = make_registry({"x"});
  const Circuit zero = constant_circuit(false, VarSet{0}, names);
  CHECK_FALSE(evaluate(zero, assign({{0, true}})));
  CHECK_FALSE(evaluate(zero, assign({{0, false}})));
}

TEST_CASE("reached nodes for the reference circuit") {
  const Circuit z = reference_circuit();
  const auto reached = reached_nodes(z, assign({{0, false}, {1, true}, {2, true}}));
  // Root, the AND node, both unary decisions below it, and the 1-sink.
  std::vector<NodeId> expected{z.root()};
  const NodeId and_node = z.node(z.root()).low;
  expected.push_back(and_node);
  expected.push_back(z.node(and_node).left());
  expected.push_back(z.node(and_node).right());
  expected.push_back(z.node(z.node(and_node).left()).high);
  std::sort(expected.begin(), expected.end());
  expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
  CHECK(reached == expected);
}

TEST_CASE("empty assignment reaches the root and AND-only descendants") {
  const Circuit z = reference_circuit();
  CHECK(reached_nodes(z, Assignment{}) == std::vector<NodeId>{z.root()});
  auto names = make_registry({"x", "y"});
  CircuitBuilder b(names);
  const NodeId l = b.decision(0, b.sink(false), b.sink(true));
  const NodeId r = b.decision(1, b.sink(false), b.sink(true));
  const Circuit c = std::move(b).build(b.conjunction(l, r), VarSet{0, 1});
  CHECK(reached_nodes(c, Assignment{}).size() == 3);
}

TEST_CASE("total assignment on an FBDD reaches exactly one root-to-sink path") {
  Rng rng(2);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + pick(rng, 10);
    auto names = numbered(n);
    const auto vars = iota_vars(n);
    const Circuit z = random_fbdd(rng, vars, names, names->all());
    Assignment tau;
    for (Var v : vars) tau.set(v, coin(rng));
    // Simulate the path.
    std::vector<NodeId> path;
    NodeId at = z.root();
    while (true) {
      path.push_back(at);
      const Node& node = z.node(at);
      if (node.is_sink()) break;
      at = tau.value(node.var) ? node.high : node.low;
    }
    std::sort(path.begin(), path.end());
    CHECK(reached_nodes(z, tau) == path);
  }
}

TEST_CASE("maximal reached nodes: full prefix gives the reached sinks; empty prefix the root") {
  Rng rng(4);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 2 + pick(rng, 6);
    auto names = numbered(n);
    const auto vars = iota_vars(n);
    const VariableOrder o(vars);
    const Circuit z = random_and_obdd(rng, o, names, names->all());
    Assignment tau;
    for (Var v : vars) tau.set(v, coin(rng));
    const auto w = maximal_reached_nodes(z, tau, o);
    const auto reached = reached_nodes(z, tau);
    std::vector<NodeId> sinks;
    for (NodeId id : reached)
      if (z.node(id).is_sink()) sinks.push_back(id);
    CHECK(w == sinks);
    const Node& root = z.node(z.root());
    if (root.is_decision() && root.var == 0) CHECK(maximal_reached_nodes(z, Assignment{}, o) == std::vector<NodeId>{z.root()});
  }
}

TEST_CASE("maximal_reached_nodes checks the prefix precondition when given an order") {
  const Circuit z = reference_circuit();
  const VariableOrder o({0, 1, 2});
  CHECK_NOTHROW(maximal_reached_nodes(z, assign({{0, true}}), o));
  try {
    maximal_reached_nodes(z, assign({{1, true}}), o);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PreconditionViolated);
  }
}

TEST_CASE("conditioning") {
  const Circuit z = reference_circuit();
  SUBCASE("x -> 1 leaves exactly one of y, z") {
    const Circuit c = condition(z, assign({{0, true}}));
    CHECK(c.scope() == VarSet{1, 2});
    CHECK(model_count(c).count == 2);
    for_each_assignment(std::vector<Var>{1, 2}, [&](const Assignment& a) {
      CHECK(evaluate(c, a) == (a.value(1) != a.value(2)));
    });
    CHECK(size(c) <= size(z));
  }
  SUBCASE("empty assignment keeps the function") {
    CHECK(equivalent_bruteforce(z, condition(z, Assignment{}), z.scope()));
  }
  SUBCASE("assignment outside the scope is rejected") {
    CHECK_THROWS_AS(condition(z, assign({{7, true}})), Error);
  }
}

TEST_CASE("model counting") {
  CHECK(model_count(reference_circuit()).count == 3);
  auto names = numbered(70);
  const Circuit one = constant_circuit(true, names->all(), names);
  CHECK(model_count(one).count == BigInt(1) << 70);
  auto small = make_registry({"x"});
  CircuitBuilder b(small);
  const NodeId a = b.decision(0, b.sink(false), b.sink(true));
  const Circuit bad = std::move(b).build(b.conjunction(a, a), VarSet{0});
  CHECK_THROWS_AS(model_count(bad), Error);
  CHECK_THROWS_AS(model_count(reference_circuit(), VarSet{0, 1}), Error);
}

TEST_CASE("compiled F2_G(triangle) counts like the 64-assignment enumeration") {
  const CnfFormula f = build_f2_g(cycle_graph(3));
  const auto vars = f.scope().to_vector();
  CHECK(model_count(compile(f)).count == ones(truth_table(f, vars)));
}

TEST_CASE("equivalence oracle") {
  const Circuit z = reference_circuit();
  const Circuit zero = constant_circuit(false, z.scope(), z.registry());
  const auto witness = find_disagreement(z, zero, z.scope());
  REQUIRE(witness);
  CHECK(evaluate(z, *witness));
  CHECK_FALSE(equivalent_bruteforce(z, zero, z.scope()));
  CHECK(equivalent_bruteforce(z, normalize(z), z.scope()));
  auto big = numbered(25);
  const Circuit c = constant_circuit(true, big->all(), big);
  CHECK_THROWS_AS(equivalent_bruteforce(c, c, c.scope()), Error);
}

TEST_CASE("CNF semantics on F_G(triangle)") {
  const CnfFormula f = build_f_g(cycle_graph(3));
  CHECK(cnf_evaluate(f, assign({{0, true}, {1, true}, {2, false}})));
  CHECK_FALSE(cnf_evaluate(f, assign({{0, true}, {1, true}, {2, true}})));
  CHECK(cnf_count_bruteforce(f).count == 3);
}

TEST_CASE("property: evaluate agrees with the recursive truth table and with model_count") {
  Rng rng(21);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = 1 + pick(rng, 9);
    auto names = numbered(n);
    const auto vars = iota_vars(n);
    const Circuit z = random_structured(rng, random_vtree(rng, vars, false), names, names->all());
    const auto table = truth_table(z, vars);
    std::size_t row = 0;
    for_each_assignment(vars, [&](const Assignment& a) { CHECK(evaluate(z, a) == (table[row++] != 0)); });
    CHECK(model_count(z).count == ones(table));
  }
}

TEST_CASE("property: Shannon consistency of counting under conditioning") {
  Rng rng(22);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 2 + pick(rng, 8);
    auto names = numbered(n);
    const auto vars = iota_vars(n);
    const Circuit z = random_and_obdd(rng, VariableOrder(vars), names, names->all());
    const Var x = vars[pick(rng, n)];
    const auto c0 = model_count(condition(z, assign({{x, false}})));
    const auto c1 = model_count(condition(z, assign({{x, true}})));
    CHECK(model_count(z).count == c0.count + c1.count);
  }
}

TEST_CASE("property: conditioning equals semantic restriction pointwise") {
  Rng rng(23);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 2 + pick(rng, 7);
    auto names = numbered(n);
    const auto vars = iota_vars(n);
    const Circuit z = random_structured(rng, random_vtree(rng, vars, false), names, names->all());
    Assignment tau;
    for (Var v : vars)
      if (coin(rng, 0.4)) tau.set(v, coin(rng));
    const Circuit c = condition(z, tau);
    CHECK(c.scope() == names->all() - tau.domain());
    CHECK(size(c) <= size(z));
    for_each_assignment(vars, [&](const Assignment& a) {
      if (!a.compatible_with(tau)) return;
      CHECK(evaluate(c, a.restricted(c.scope())) == evaluate(z, a));
    });
  }
}

TEST_CASE("property: maximal-node decomposition and rectangle swap on small AND-OBDDs") {
  Rng rng(24);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t n = 2 + pick(rng, 6);
    auto names = numbered(n);
    auto vars = iota_vars(n);
    std::shuffle(vars.begin(), vars.end(), rng);
    const VariableOrder o(vars);
    // The decomposition only holds once every sink has a single parent.
    const Circuit z = normalize(random_and_obdd(rng, o, names, names->all()));
    const std::size_t cut = pick(rng, n + 1);
    const std::vector<Var> prefix(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(cut));
    const std::vector<Var> suffix(vars.begin() + static_cast<std::ptrdiff_t>(cut), vars.end());
    Assignment tau;
    for (Var v : prefix) tau.set(v, coin(rng));
    const auto w = maximal_reached_nodes(z, tau, o);
    const auto& sv = subcircuit_vars(z);
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) CHECK_FALSE(sv[w[i]].intersects(sv[w[j]]));
    for_each_assignment(suffix, [&](const Assignment& rest) {
      bool all = true;
      for (NodeId alpha : w) all = all && evaluate_node(z, alpha, rest);
      CHECK(evaluate(z, tau.merged(rest)) == all);
    });
  }
}
