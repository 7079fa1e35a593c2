#pragma once

#include <cstddef>

#include "kc/circuit.hpp"
#include "kc/cnf.hpp"
#include "kc/structure.hpp"

namespace kc {

inline constexpr std::size_t kReducedObddLimit = 16;
inline constexpr std::size_t kMinObddLimit = 8;

/// Canonical reduced OBDD of f under o, built from f's truth table over
/// the scope variables in o. Sinks are shared, so the node count is
/// #decision nodes + #distinct sinks. Throws ScopeTooLarge beyond `limit`
/// variables and ScopeViolation if o misses a variable of f.
Circuit reduced_obdd(const CnfFormula& f, const VariableOrder& o, std::size_t limit = kReducedObddLimit);

/// Bottom-up reduction of an AND-free circuit: one sink per value,
/// redundant tests dropped, equal (var, low, high) triples merged.
/// Throws HasAndNodes.
Circuit reduce_obdd(const Circuit& z);

/// Number of decision nodes.
std::size_t decision_count(const Circuit& z);

struct MinObddResult {
  std::size_t size = 0;  ///< edge count
  VariableOrder best_order;
};

/// Smallest reduced OBDD over all orders of f's scope (first minimum in
/// lexicographic permutation order of ids). Throws ScopeTooLarge.
MinObddResult min_obdd_size(const CnfFormula& f, std::size_t limit = kMinObddLimit);

}  // namespace kc
