#include "kc/transforms.hpp"

#include <unordered_map>

#include "kc/cnf.hpp"
#include "kc/error.hpp"
#include "kc/instances.hpp"
#include "kc/semantics.hpp"

namespace kc {
namespace {

UnaryFunction classify_node(const Circuit& z, NodeId alpha, Var x) {
  Assignment tau;
  tau.set(x, false);
  const bool at0 = evaluate_node(z, alpha, tau);
  tau.set(x, true);
  const bool at1 = evaluate_node(z, alpha, tau);
  if (at0 == at1) return at0 ? UnaryFunction::ConstOne : UnaryFunction::ConstZero;
  return at1 ? UnaryFunction::Positive : UnaryFunction::Negative;
}

// Copies the reachable part of `z` into `b`, returning the new root.
NodeId embed(CircuitBuilder& b, const Circuit& z) {
  std::vector<NodeId> map(z.num_nodes());
  for (NodeId id : z.topological_order()) {
    const Node& n = z.node(id);
    switch (n.kind) {
      case NodeKind::Sink: map[id] = b.sink(n.value); break;
      case NodeKind::Decision: map[id] = b.decision(n.var, map[n.low], map[n.high]); break;
      case NodeKind::And: map[id] = b.conjunction(map[n.low], map[n.high]); break;
    }
  }
  return map[z.root()];
}

}  // namespace

std::string_view to_string(UnaryFunction f) noexcept {
  switch (f) {
    case UnaryFunction::ConstZero: return "ConstZero";
    case UnaryFunction::ConstOne: return "ConstOne";
    case UnaryFunction::Positive: return "PositiveLiteral";
    case UnaryFunction::Negative: return "NegativeLiteral";
  }
  return "?";
}

UnaryFunction classify_unary(const Circuit& z, Var x) {
  const VarSet vars = circuit_vars(z);
  if (!vars.is_subset_of(VarSet{x}))
    throw Error(Errc::ScopeViolation, "circuit depends on variables other than " + z.variables().name(x));
  return classify_node(z, z.root(), x);
}

LinearizeResult linearize(const Circuit& z, const Vtree& t) {
  if (!validate_decomposable(z).ok()) throw Error(Errc::NotDecomposable, "linearize needs a decDNNF");
  if (const auto report = respects_vtree(z, t); !report.ok())
    throw Error(Errc::NotStructured, report.violations.front().detail);
  if (!is_linear(t)) throw Error(Errc::NotLinearVtree, "vtree has an internal node without a leaf child");

  LinearizeResult out{z, {}};
  out.trace.size_before = out.trace.size_after = size(z);
  if (!z.has_and_nodes()) return out;

  const auto& vars = z.node_vars();
  CircuitBuilder b(z.registry());
  std::vector<NodeId> map(z.num_nodes());
  for (NodeId id : z.topological_order()) {
    const Node& n = z.node(id);
    if (n.is_sink()) {
      map[id] = b.sink(n.value);
    } else if (n.is_decision()) {
      map[id] = b.decision(n.var, map[n.low], map[n.high]);
    } else {
      NodeId leaf = n.left(), other = n.right();
      if (vars[leaf].size() > 1) std::swap(leaf, other);
      if (vars[leaf].size() > 1) throw Error(Errc::NotStructured, "AND node " + std::to_string(id) + " has no unary child");
      // A variable-free side is constant; any variable classifies it.
      const Var x = vars[leaf].first().value_or(vars[other].first().value_or(0));
      const UnaryFunction kind = classify_node(z, leaf, x);
      out.trace.steps.push_back({id, kind});
      switch (kind) {
        case UnaryFunction::ConstZero: map[id] = b.sink(false); break;
        case UnaryFunction::ConstOne: map[id] = map[other]; break;
        case UnaryFunction::Positive: map[id] = b.decision(x, b.sink(false), map[other]); break;
        case UnaryFunction::Negative: map[id] = b.decision(x, map[other], b.sink(false)); break;
      }
    }
  }
  out.circuit = std::move(b).build(map[z.root()], z.scope());
  out.trace.size_after = size(out.circuit);
  return out;
}

Circuit structured_to_fbdd(const Circuit& z, const Vtree& t) {
  if (!z.has_and_nodes()) return z;
  if (const auto report = respects_vtree(z, t); !report.ok())
    throw Error(Errc::NotStructured, report.violations.front().detail);
  if (!has_decision_path(z, z.scope()))
    throw Error(Errc::NoDecisionPath, "no source-sink decision path tests the whole scope");
  if (!is_linear(t))
    throw Error(Errc::NotLinearVtree, "circuit has a full decision path yet respects a non-linear vtree");
  return linearize(z, t).circuit;
}

Circuit strip_guard_clause(const Circuit& z, const VariableOrder& vertex_order) {
  if (z.has_and_nodes()) throw Error(Errc::HasAndNodes, "strip_guard_clause expects an FBDD");
  const VarSet ordered = vertex_order.vars();
  if (!circuit_vars(z).is_subset_of(ordered) || !ordered.is_subset_of(z.scope()))
    throw Error(Errc::ScopeViolation, "vertex order must cover var(Z) and stay inside the scope");

  const auto& xs = vertex_order.sequence();
  CircuitBuilder b(z.registry());
  NodeId next = b.sink(true);
  Assignment tau;
  for (std::size_t i = 0; i < xs.size(); ++i) tau.set(xs[i], true);
  for (std::size_t i = xs.size(); i-- > 0;) {
    tau.set(xs[i], false);
    for (std::size_t j = i + 1; j < xs.size(); ++j) tau.unset(xs[j]);
    const NodeId copy = embed(b, condition(z, tau));
    next = b.decision(xs[i], copy, next);
  }
  return std::move(b).build(next, z.scope());
}

bool remove_vertex_check(const Graph& g, Vertex x, const Circuit& z) {
  if (g.num_vertices() < 2) throw Error(Errc::TooFewVertices, "vertex removal needs |V| >= 2");
  const Var xv = z.variables().id(g.name(x));
  Assignment tau;
  tau.set(xv, true);
  const Circuit conditioned = condition(z, tau);
  const CnfFormula reduced = build_f_g(g.without(x), z.registry());
  const VarSet scope = conditioned.scope() | reduced.scope();
  if (scope.size() > kBruteForceLimit) throw Error(Errc::ScopeTooLarge, "remove_vertex_check enumerates the scope");
  const auto vars = scope.to_vector();
  bool same = true;
  for_each_assignment(vars, [&](const Assignment& a) {
    if (same && evaluate(conditioned, a) != cnf_evaluate(reduced, a)) same = false;
  });
  return same;
}

}  // namespace kc
