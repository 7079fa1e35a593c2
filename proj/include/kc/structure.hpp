#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kc/circuit.hpp"

namespace kc {

/// Total order on a variable set, given as a permutation.
class VariableOrder {
 public:
  VariableOrder() = default;
  /// Throws BadParameters on repeated variables.
  explicit VariableOrder(std::vector<Var> sequence);

  const std::vector<Var>& sequence() const noexcept { return sequence_; }
  std::size_t size() const noexcept { return sequence_.size(); }
  bool contains(Var v) const noexcept { return v < position_.size() && position_[v] != kAbsent; }
  /// Throws ScopeViolation for variables outside the order.
  std::size_t position(Var v) const;
  bool less(Var a, Var b) const { return position(a) < position(b); }

  VarSet vars() const { return VarSet(std::span<const Var>(sequence_)); }
  VarSet at_most(Var u) const;      ///< [≤u]
  VarSet before(Var u) const;       ///< [<u]
  VarSet after(Var u) const;        ///< [>u]
  VarSet at_least(Var u) const;     ///< [≥u]

  /// The order with every variable outside `keep` removed.
  VariableOrder restricted(const VarSet& keep) const;

  static VariableOrder parse(std::string_view csv, const VariableRegistry& names);
  std::string format(const VariableRegistry& names) const;

 private:
  static constexpr std::size_t kAbsent = ~std::size_t{0};
  std::vector<Var> sequence_;
  std::vector<std::size_t> position_;
};

/// Full binary tree whose leaves are in bijection with a variable set.
class Vtree {
 public:
  struct Node {
    int left = -1;
    int right = -1;
    Var var = 0;

    bool is_leaf() const noexcept { return left < 0; }
  };

  static Vtree leaf(Var v);
  /// Throws BadParameters if the two trees share a variable.
  static Vtree join(const Vtree& left, const Vtree& right);
  /// Nested-parentheses syntax, e.g. "(x (y z))".
  static Vtree parse(std::string_view text, const VariableRegistry& names);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  int root() const noexcept { return root_; }
  /// var(t) for every node t.
  const std::vector<VarSet>& node_vars() const noexcept { return vars_; }
  const VarSet& vars() const { return vars_.at(static_cast<std::size_t>(root_)); }

  std::string format(const VariableRegistry& names) const;

 private:
  void recompute();
  std::vector<Node> nodes_;
  int root_ = 0;
  std::vector<VarSet> vars_;
};

/// Every internal node has at least one leaf child.
bool is_linear(const Vtree& t);

/// Right caterpillar whose left-to-right leaf order is `o`.
Vtree linear_vtree_from_order(const VariableOrder& o);

/// All vtrees on `vars` up to swapping children ((2n-3)!! of them).
std::vector<Vtree> all_vtrees(const std::vector<Var>& vars);

/// Structuredness test, child orientation ignored. Requires that t's
/// leaves cover the circuit's scope (ScopeViolation otherwise).
ValidationReport respects_vtree(const Circuit& z, const Vtree& t);

/// Decision variables strictly increase along every path. Requires that
/// o covers var(Z) (ScopeViolation otherwise).
ValidationReport respects_order(const Circuit& z, const VariableOrder& o);

/// Some order respected by z, if any (topological sort of the
/// "tested above" relation).
std::optional<VariableOrder> find_respected_order(const Circuit& z);

/// Source-to-sink path made only of decision nodes that tests every
/// variable of `vars`. The returned path lists the decision nodes from
/// the root; the sink that ends it is not included.
std::optional<std::vector<NodeId>> has_decision_path(const Circuit& z, const VarSet& vars);

}  // namespace kc
