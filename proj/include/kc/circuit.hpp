#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "kc/variables.hpp"

namespace kc {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { Decision, And, Sink };

/// One node of an ∧-FBDD. For decision nodes `low` is the 0-labelled edge
/// and `high` the 1-labelled edge; AND nodes reuse the two slots as
/// left/right.
struct Node {
  NodeKind kind = NodeKind::Sink;
  Var var = 0;
  NodeId low = 0;
  NodeId high = 0;
  bool value = false;

  static Node decision(Var v, NodeId low, NodeId high) {
    return {NodeKind::Decision, v, low, high, false};
  }
  static Node conjunction(NodeId left, NodeId right) {
    return {NodeKind::And, 0, left, right, false};
  }
  static Node sink(bool value) { return {NodeKind::Sink, 0, 0, 0, value}; }

  bool is_decision() const noexcept { return kind == NodeKind::Decision; }
  bool is_and() const noexcept { return kind == NodeKind::And; }
  bool is_sink() const noexcept { return kind == NodeKind::Sink; }
  NodeId left() const noexcept { return low; }
  NodeId right() const noexcept { return high; }

  friend bool operator==(const Node&, const Node&) = default;
};

enum class ViolationKind { ReadOnce, Decomposability, OrderRespect, VtreeRespect, Acyclicity };

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  /// Node path or node pair witnessing the violation.
  std::vector<NodeId> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Unchecked circuit description, as produced by parsers and builders.
struct CircuitDescription {
  std::vector<Node> nodes;
  NodeId root = 0;
  VarSet scope;
  std::shared_ptr<const VariableRegistry> variables;
};

/// Rooted DAG of decision, AND and sink nodes satisfying acyclicity and
/// the read-once property. Immutable once built; all transformations
/// return new circuits.
class Circuit {
 public:
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  NodeId root() const noexcept { return root_; }
  std::size_t num_nodes() const noexcept { return nodes_.size(); }

  /// Declared variable set X; may strictly contain var(Z).
  const VarSet& scope() const noexcept { return scope_; }
  const VariableRegistry& variables() const noexcept { return *variables_; }
  const std::shared_ptr<const VariableRegistry>& registry() const noexcept { return variables_; }

  /// Reachable node ids, children before parents.
  std::span<const NodeId> topological_order() const noexcept { return topo_; }

  /// var(Z_α) for every node α.
  const std::vector<VarSet>& node_vars() const noexcept { return vars_; }
  bool has_and_nodes() const noexcept;

  CircuitDescription description() const;

 private:
  friend Circuit build_circuit(CircuitDescription description);

  std::vector<Node> nodes_;
  NodeId root_ = 0;
  VarSet scope_;
  std::shared_ptr<const VariableRegistry> variables_;
  std::vector<NodeId> topo_;
  std::vector<VarSet> vars_;
};

/// Checks references, acyclicity and read-once, drops unreachable nodes
/// (ids are compacted preserving relative order) and freezes the result.
/// Throws DanglingRef, ScopeViolation, CyclicGraph or
/// RepeatedVariableOnPath (the message carries the witness path).
Circuit build_circuit(CircuitDescription description);
Circuit build_circuit(std::vector<Node> nodes, NodeId root, VarSet scope,
                      std::shared_ptr<const VariableRegistry> variables);

/// Incremental construction helper. The 0/1 sinks are shared.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::shared_ptr<const VariableRegistry> variables)
      : variables_(std::move(variables)) {}

  NodeId decision(Var v, NodeId low, NodeId high);
  NodeId conjunction(NodeId left, NodeId right);
  /// Shared sink for `value`.
  NodeId sink(bool value);
  /// Always allocates a fresh sink.
  NodeId fresh_sink(bool value);
  NodeId add(const Node& node);

  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::size_t num_nodes() const noexcept { return nodes_.size(); }

  Circuit build(NodeId root, VarSet scope) &&;
  Circuit build(NodeId root, VarSet scope) const&;

 private:
  std::shared_ptr<const VariableRegistry> variables_;
  std::vector<Node> nodes_;
  std::int64_t sinks_[2] = {-1, -1};
};

/// Constant circuit: a single sink.
Circuit constant_circuit(bool value, VarSet scope, std::shared_ptr<const VariableRegistry> variables);

/// |Z|: number of edges of the DAG.
std::size_t size(const Circuit& z);

/// var(Z_α) for every node α; sinks map to ∅.
const std::vector<VarSet>& subcircuit_vars(const Circuit& z);

/// var(Z): all variables labelling a decision node.
VarSet circuit_vars(const Circuit& z);

/// Z_α as a standalone circuit over the same scope.
Circuit subcircuit(const Circuit& z, NodeId alpha);

ValidationReport validate_decomposable(const Circuit& z);

/// Collapses variable-free internal nodes into sinks, then gives every
/// sink a single incoming edge. Afterwards the two sub-DAGs of every AND
/// node are node-disjoint. Throws NotDecomposable.
Circuit normalize(const Circuit& z);

/// Hash-consing pass: merges structurally identical nodes.
Circuit merge_isomorphic(const Circuit& z);

/// Rooted, child-order-preserving DAG isomorphism.
bool isomorphic(const Circuit& a, const Circuit& b);

}  // namespace kc
