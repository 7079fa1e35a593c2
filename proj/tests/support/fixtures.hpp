#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "kc/circuit.hpp"
#include "kc/cnf.hpp"
#include "kc/graph.hpp"
#include "kc/structure.hpp"

namespace kc::test {

std::shared_ptr<VariableRegistry> make_registry(const std::vector<std::string>& names);

/// "Exactly two of x, y, z": x ? (y ? ¬z : z) : AND(y, z).
Circuit reference_circuit();
/// (x (y z)) over reference_circuit's registry.
Vtree reference_vtree(const VariableRegistry& names);
/// Structured by (x (y z)) but testing y before z on one branch and z
/// before y on the other, so it respects no order.
Circuit unordered_structured_circuit();

/// Truth table over `vars` (vars[0] least significant), computed by the
/// recursive reading of the DAG: decision = selected child, AND = both.
std::vector<char> truth_table(const Circuit& z, const std::vector<Var>& vars);
std::vector<char> truth_table(const CnfFormula& f, const std::vector<Var>& vars);
std::uint64_t ones(const std::vector<char>& table);

using Rng = std::mt19937_64;
std::size_t pick(Rng& rng, std::size_t n);
bool coin(Rng& rng, double p = 0.5);

/// Random vtree on `vars`; with `linear` every internal node gets a leaf
/// child, on a random side.
Vtree random_vtree(Rng& rng, const std::vector<Var>& vars, bool linear);

/// Random decDNNF structured by t. Generated nodes are pooled per vtree
/// node and reused, so the result is a DAG.
Circuit random_structured(Rng& rng, const Vtree& t, std::shared_ptr<const VariableRegistry> names,
                          const VarSet& scope);

/// Random ∧d-OBDD respecting o, pooled per residual variable list.
Circuit random_and_obdd(Rng& rng, const VariableOrder& o, std::shared_ptr<const VariableRegistry> names,
                        const VarSet& scope);

/// Random FBDD without AND nodes (read-once by construction, no order).
Circuit random_fbdd(Rng& rng, const std::vector<Var>& vars, std::shared_ptr<const VariableRegistry> names,
                    const VarSet& scope);

/// Random CNF on `n` variables x0..x(n-1) with clauses of width 1..max_width.
CnfFormula random_cnf(Rng& rng, std::size_t n, std::size_t clauses, std::size_t max_width);

/// Random connected graph on n vertices.
Graph random_graph(Rng& rng, std::size_t n, double p);

/// Every connected graph on n ≤ 6 labelled vertices, one per isomorphism
/// class (canonical form by brute-force relabelling).
std::vector<Graph> connected_graphs_up_to_iso(std::size_t n);

/// All total orders of `vars` (lexicographic permutations).
std::vector<VariableOrder> all_orders(std::vector<Var> vars);

}  // namespace kc::test
