#pragma once

#include <optional>
#include <vector>

#include "kc/circuit.hpp"
#include "kc/count.hpp"
#include "kc/structure.hpp"

namespace kc {

// Path semantics: a decision edge out of a node on v is traversable only
// when v is assigned and the edge label equals the assigned value; AND
// edges are always traversable. An assignment satisfies Z iff no 0-sink
// is reachable from the root along traversable edges.

/// Requires tau to be total on z.scope() (IncompleteAssignment otherwise).
bool evaluate(const Circuit& z, const Assignment& tau);

/// Evaluates Z_alpha; tau must assign every variable of var(Z_alpha).
bool evaluate_node(const Circuit& z, NodeId alpha, const Assignment& tau);

/// Nodes reached by a (possibly partial) tau, ascending.
std::vector<NodeId> reached_nodes(const Circuit& z, const Assignment& tau);

/// Reached nodes alpha such that alpha is the only reached node of Z_alpha.
/// The prefix precondition (z respects some order and dom(tau) is a
/// prefix of it) is not checked here.
std::vector<NodeId> maximal_reached_nodes(const Circuit& z, const Assignment& tau);

/// Same, after checking that z respects `order` and dom(tau) is a prefix
/// [≤u] of it. Throws PreconditionViolated.
std::vector<NodeId> maximal_reached_nodes(const Circuit& z, const Assignment& tau,
                                          const VariableOrder& order);

/// Z[tau]: decision nodes on assigned variables are bypassed toward the
/// tau-selected child. The result's scope is scope \ dom(tau).
Circuit condition(const Circuit& z, const Assignment& tau);

/// Bottom-up count via the product rule at AND nodes and the Shannon rule
/// at decision nodes, with 2^gap correction for untested variables.
/// Throws NotDecomposable or ScopeViolation (var(Z) ⊄ scope).
CountResult model_count(const Circuit& z, const VarSet& scope);
CountResult model_count(const Circuit& z);

inline constexpr std::size_t kBruteForceLimit = 20;

/// First assignment of `scope` (binary counting order) where a and b
/// differ. Throws ScopeTooLarge beyond `limit` variables.
std::optional<Assignment> find_disagreement(const Circuit& a, const Circuit& b, const VarSet& scope,
                                            std::size_t limit = kBruteForceLimit);

bool equivalent_bruteforce(const Circuit& a, const Circuit& b, const VarSet& scope,
                           std::size_t limit = kBruteForceLimit);

}  // namespace kc
