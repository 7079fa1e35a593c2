#include "kc/semantics.hpp"

#include <algorithm>

#include "kc/error.hpp"

namespace kc {
namespace {

// Marks nodes reachable from `start` along edges compatible with tau.
std::vector<bool> reach(const Circuit& z, NodeId start, const Assignment& tau) {
  std::vector<bool> seen(z.num_nodes(), false);
  std::vector<NodeId> stack{start};
  seen[start] = true;
  auto visit = [&](NodeId c) {
    if (!seen[c]) {
      seen[c] = true;
      stack.push_back(c);
    }
  };
  while (!stack.empty()) {
    const Node& n = z.node(stack.back());
    stack.pop_back();
    if (n.is_and()) {
      visit(n.low);
      visit(n.high);
    } else if (n.is_decision()) {
      if (auto b = tau.get(n.var)) visit(*b ? n.high : n.low);
    }
  }
  return seen;
}

bool no_zero_sink(const Circuit& z, const std::vector<bool>& seen) {
  for (NodeId id = 0; id < z.num_nodes(); ++id) {
    const Node& n = z.node(id);
    if (seen[id] && n.is_sink() && !n.value) return false;
  }
  return true;
}

BigInt pow2(std::size_t k) { return BigInt(1) << k; }

void require_scope_at_most(const VarSet& scope, std::size_t limit) {
  if (scope.size() > limit)
    throw Error(Errc::ScopeTooLarge, std::to_string(scope.size()) + " variables exceed the limit of " +
                                         std::to_string(limit));
}

}  // namespace

bool evaluate(const Circuit& z, const Assignment& tau) {
  z.scope().for_each([&](Var v) {
    if (!tau.contains(v))
      throw Error(Errc::IncompleteAssignment, "no value for " + z.variables().name(v));
  });
  return no_zero_sink(z, reach(z, z.root(), tau));
}

bool evaluate_node(const Circuit& z, NodeId alpha, const Assignment& tau) {
  z.node_vars().at(alpha).for_each([&](Var v) {
    if (!tau.contains(v))
      throw Error(Errc::IncompleteAssignment, "no value for " + z.variables().name(v));
  });
  return no_zero_sink(z, reach(z, alpha, tau));
}

std::vector<NodeId> reached_nodes(const Circuit& z, const Assignment& tau) {
  const auto seen = reach(z, z.root(), tau);
  std::vector<NodeId> out;
  for (NodeId id = 0; id < z.num_nodes(); ++id)
    if (seen[id]) out.push_back(id);
  return out;
}

std::vector<NodeId> maximal_reached_nodes(const Circuit& z, const Assignment& tau) {
  const auto seen = reach(z, z.root(), tau);
  std::vector<bool> reached_below(z.num_nodes(), false);
  for (NodeId id : z.topological_order()) {
    const Node& n = z.node(id);
    if (n.is_sink()) continue;
    reached_below[id] = seen[n.low] || reached_below[n.low] || seen[n.high] || reached_below[n.high];
  }
  std::vector<NodeId> out;
  for (NodeId id = 0; id < z.num_nodes(); ++id)
    if (seen[id] && !reached_below[id]) out.push_back(id);
  return out;
}

std::vector<NodeId> maximal_reached_nodes(const Circuit& z, const Assignment& tau,
                                          const VariableOrder& order) {
  if (!respects_order(z, order).ok())
    throw Error(Errc::PreconditionViolated, "circuit does not respect the order");
  const VarSet dom = tau.domain();
  if (!dom.empty()) {
    const Var u = order.sequence().at(dom.size() - 1);
    if (!(dom == order.at_most(u)))
      throw Error(Errc::PreconditionViolated, "assignment domain is not a prefix of the order");
  }
  return maximal_reached_nodes(z, tau);
}

Circuit condition(const Circuit& z, const Assignment& tau) {
  const VarSet dom = tau.domain();
  if (!dom.is_subset_of(z.scope()))
    throw Error(Errc::ScopeViolation, "conditioning on variables outside the scope");
  CircuitBuilder b(z.registry());
  std::vector<NodeId> image(z.num_nodes(), 0);
  for (NodeId id : z.topological_order()) {
    const Node& n = z.node(id);
    if (n.is_decision() && tau.contains(n.var)) {
      image[id] = image[tau.value(n.var) ? n.high : n.low];
    } else if (n.is_sink()) {
      image[id] = b.add(n);
    } else {
      Node copy = n;
      copy.low = image[n.low];
      copy.high = image[n.high];
      image[id] = b.add(copy);
    }
  }
  return std::move(b).build(image[z.root()], z.scope() - dom);
}

CountResult model_count(const Circuit& z, const VarSet& scope) {
  if (!validate_decomposable(z).ok())
    throw Error(Errc::NotDecomposable, "model counting requires decomposable AND nodes");
  const auto& vars = z.node_vars();
  if (!vars[z.root()].is_subset_of(scope))
    throw Error(Errc::ScopeViolation, "count scope does not contain var(Z)");
  std::vector<BigInt> count(z.num_nodes());
  for (NodeId id : z.topological_order()) {
    const Node& n = z.node(id);
    switch (n.kind) {
      case NodeKind::Sink:
        count[id] = n.value ? 1 : 0;
        break;
      case NodeKind::And:
        count[id] = count[n.low] * count[n.high];
        break;
      case NodeKind::Decision: {
        const std::size_t s = vars[id].size();
        count[id] = count[n.low] * pow2(s - vars[n.low].size() - 1) +
                    count[n.high] * pow2(s - vars[n.high].size() - 1);
        break;
      }
    }
  }
  return {count[z.root()] * pow2(scope.size() - vars[z.root()].size()), scope};
}

CountResult model_count(const Circuit& z) { return model_count(z, z.scope()); }

std::optional<Assignment> find_disagreement(const Circuit& a, const Circuit& b, const VarSet& scope,
                                            std::size_t limit) {
  require_scope_at_most(scope, limit);
  if (!a.scope().is_subset_of(scope) || !b.scope().is_subset_of(scope))
    throw Error(Errc::ScopeViolation, "comparison scope must contain both circuit scopes");
  const auto vars = scope.to_vector();
  std::optional<Assignment> witness;
  const std::uint64_t total = std::uint64_t{1} << vars.size();
  for (std::uint64_t bits = 0; bits < total && !witness; ++bits) {
    Assignment tau = Assignment::from_bits(vars, bits);
    if (evaluate(a, tau) != evaluate(b, tau)) witness = std::move(tau);
  }
  return witness;
}

bool equivalent_bruteforce(const Circuit& a, const Circuit& b, const VarSet& scope, std::size_t limit) {
  return !find_disagreement(a, b, scope, limit).has_value();
}

}  // namespace kc
