#pragma once

#include <cstdint>
#include <vector>

#include "kc/graph.hpp"
#include "kc/structure.hpp"

namespace kc {

inline constexpr std::size_t kSplitMatchingLimit = 10;

/// One pair (v^c, w^c') of M, with c the witness colour and c' the other.
struct SplitPair {
  Vertex v;  ///< copy `colour` sits at or before the pivot
  Vertex w;  ///< the other copy sits after the pivot
};

struct SplitWitness {
  Var pivot = 0;
  /// 1: pairs are (v¹, w²); 2: the colour-swapped form (v², w¹).
  int colour = 1;
  std::vector<SplitPair> pairs;
  /// max(1, 2^(|M|-2)).
  std::uint64_t bound = 1;
  std::size_t size() const noexcept { return pairs.size(); }
};

/// Largest M over all pivots u and both colours such that every pair has
/// v^c ≤ u < w^c' in o and {{v,w}} is an induced matching of g. Variables
/// are resolved by name ("<v>_1", "<v>_2") in `names`. An empty M with
/// bound 1 is returned when nothing straddles any pivot. Throws
/// ScopeTooLarge beyond `limit` vertices.
SplitWitness best_split_matching(const Graph& g, const VariableRegistry& names, const VariableOrder& o,
                                 std::size_t limit = kSplitMatchingLimit);

std::uint64_t split_bound(std::size_t matching_size);

struct SplitBoundReport {
  std::size_t reduced_size = 0;  ///< edge count of the reduced OBDD of F²_G under o
  SplitWitness witness;
  bool holds() const noexcept { return reduced_size >= witness.bound; }
};

/// Compares the reduced OBDD of build_f2_g(g) under o with the split
/// matching bound. o uses the variable ids of build_f2_g(g).
SplitBoundReport split_bound_check(const Graph& g, const VariableOrder& o);

/// Vertices sorted by the position of their first copy in o.
std::vector<Vertex> first_copy_order(const Graph& g, const VariableRegistry& names, const VariableOrder& o);

/// Largest induced matching M of g for which some vertex u has
/// v ⪯ u ≺ w for every {v,w} ∈ M with v ≺ w, where ≺ is first_copy_order.
Matching straddling_induced_matching(const Graph& g, const VariableRegistry& names, const VariableOrder& o,
                                     std::size_t limit = kSplitMatchingLimit);

/// Maximum induced matching of g using only the candidate edges.
Matching max_induced_matching(const Graph& g, const std::vector<Edge>& candidates);

}  // namespace kc
