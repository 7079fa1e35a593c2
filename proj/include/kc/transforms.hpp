#pragma once

#include <string_view>
#include <vector>

#include "kc/circuit.hpp"
#include "kc/graph.hpp"
#include "kc/structure.hpp"

namespace kc {

enum class UnaryFunction { ConstZero, ConstOne, Positive, Negative };
std::string_view to_string(UnaryFunction f) noexcept;

struct TransformStep {
  NodeId and_node;  ///< id in the input circuit
  UnaryFunction kind;
};

struct TransformTrace {
  std::vector<TransformStep> steps;
  std::size_t size_before = 0;
  std::size_t size_after = 0;
};

/// Which of x↦0, x↦1, x↦x, x↦¬x the circuit computes.
/// Throws ScopeViolation unless var(z) ⊆ {x}.
UnaryFunction classify_unary(const Circuit& z, Var x);

struct LinearizeResult {
  Circuit circuit;
  TransformTrace trace;
};

/// Removes every AND node of a decDNNF structured by a linear vtree. Each
/// AND node has a child over at most one variable x (the left one when
/// both qualify); depending on what that child computes the node becomes
/// a 0-sink, is spliced out, or becomes a decision on x whose other edge
/// goes to a 0-sink. Throws NotDecomposable, NotStructured, NotLinearVtree.
LinearizeResult linearize(const Circuit& z, const Vtree& t);

/// FBDD equivalent to a structured circuit that has a decision path over
/// its whole scope. AND-free input is returned as is. Throws
/// NotStructured, NoDecisionPath, or NotLinearVtree.
Circuit structured_to_fbdd(const Circuit& z, const Vtree& t);

/// From an FBDD for F_G, builds an FBDD for the edge clauses alone: a
/// chain of decisions x_1..x_n whose 0-edge at x_i enters an unshared copy
/// of z conditioned on x_1..x_{i-1} ↦ 1, x_i ↦ 0. Throws HasAndNodes, and
/// ScopeViolation if the order misses a variable of z or leaves its scope.
Circuit strip_guard_clause(const Circuit& z, const VariableOrder& vertex_order);

/// Checks by enumeration that z[x ↦ 1] computes F_{G∖x}, where z computes
/// F_G and the vertex x is matched to the variable of the same name.
/// Throws TooFewVertices when |V| < 2.
bool remove_vertex_check(const Graph& g, Vertex x, const Circuit& z);

}  // namespace kc
