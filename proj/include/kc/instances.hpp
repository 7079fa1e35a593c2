#pragma once

#include <memory>
#include <vector>

#include "kc/cnf.hpp"
#include "kc/graph.hpp"

namespace kc {

/// F_G: one variable per vertex (same name, and id = vertex id when no
/// registry is supplied), the negative clause "C_G" over all vertices,
/// then one clause "e_<u>_<v>" = (u ∨ v) per edge. With `names`, vertex
/// names are resolved in that registry instead. Throws EmptyGraph.
CnfFormula build_f_g(const Graph& g, std::shared_ptr<const VariableRegistry> names = nullptr);

/// F²_G over "<v>_1" (id i) and "<v>_2" (id n+i): clauses
/// "e_<u>_<v>_12" = (u_1 ∨ v_2) and "e_<u>_<v>_21" = (u_2 ∨ v_1) per edge,
/// then "C1" and "C2". Throws EmptyGraph.
CnfFormula build_f2_g(const Graph& g);

/// Variable ids of v¹ and v² in a registry produced by build_f2_g.
Var first_copy(const VariableRegistry& names, const Graph& g, Vertex v);
Var second_copy(const VariableRegistry& names, const Graph& g, Vertex v);

/// Vertex i is the i-th scope variable in id order, with the same name.
Graph primal_graph(const CnfFormula& f);

struct IncidenceGraph {
  Graph graph;
  /// Scope variables (id order) come first, then one vertex per clause.
  std::vector<Var> vertex_var;  ///< defined for variable vertices
  std::size_t num_var_vertices = 0;
  bool is_clause(Vertex v) const noexcept { return v >= num_var_vertices; }
  std::size_t clause_index(Vertex v) const noexcept { return v - num_var_vertices; }
};

/// Throws BadParameters if a clause name coincides with a variable name.
IncidenceGraph incidence_graph(const CnfFormula& f);

/// Adds, for each clause, a pendant bag var(C) ∪ {C} hanging off a bag
/// that holds var(C). Throws ClauseNotInAnyBag.
TreeDecomposition primal_to_incidence_decomposition(const CnfFormula& f, const TreeDecomposition& d);

/// Decomposition of incidence_graph(build_f_g(g)): C_G joins every bag,
/// each edge clause hangs off as a pendant bag. Throws
/// InvalidInputDecomposition if d is not a decomposition of g.
TreeDecomposition lift_decomposition_fg(const Graph& g, const TreeDecomposition& d);

/// Same for build_f2_g(g): bags doubled plus {C1, C2}.
TreeDecomposition lift_decomposition_f2g(const Graph& g, const TreeDecomposition& d);

/// Pairwise vertex-disjoint edges of g.
bool is_matching(const Graph& g, const Matching& m);
/// Matching with no edge of g between endpoints of distinct members.
bool is_induced_matching(const Graph& g, const Matching& m);

/// Greedy induced sub-matching: keep the first remaining edge, drop every
/// remaining edge adjacent to it, repeat. Throws NotAMatching.
Matching extract_induced_matching(const Graph& g, const Matching& m);

}  // namespace kc
