#include "kc/obdd.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "kc/error.hpp"

namespace kc {
namespace {

// Truth table over `vars`, index bit (m-1-i) holding vars[i], so that
// fixing a prefix of vars selects a contiguous slice.
std::vector<char> truth_table(const CnfFormula& f, const std::vector<Var>& vars) {
  const std::size_t m = vars.size();
  std::vector<char> table(std::size_t{1} << m);
  Assignment tau;
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    for (std::size_t i = 0; i < m; ++i) tau.set(vars[i], (idx >> (m - 1 - i)) & 1U);
    table[idx] = cnf_evaluate(f, tau);
  }
  return table;
}

class TableReducer {
 public:
  TableReducer(const std::vector<char>& table, const std::vector<Var>& vars, CircuitBuilder& b)
      : table_(table), vars_(vars), b_(b) {}

  NodeId build(std::size_t level, std::size_t offset, std::size_t len) {
    const char first = table_[offset];
    if (std::all_of(table_.begin() + static_cast<std::ptrdiff_t>(offset),
                    table_.begin() + static_cast<std::ptrdiff_t>(offset + len),
                    [&](char c) { return c == first; }))
      return b_.sink(first != 0);
    const NodeId low = build(level + 1, offset, len / 2);
    const NodeId high = build(level + 1, offset + len / 2, len / 2);
    if (low == high) return low;
    auto [it, fresh] = unique_.try_emplace({vars_[level], low, high}, 0);
    if (fresh) it->second = b_.decision(vars_[level], low, high);
    return it->second;
  }

 private:
  const std::vector<char>& table_;
  const std::vector<Var>& vars_;
  CircuitBuilder& b_;
  std::map<std::tuple<Var, NodeId, NodeId>, NodeId> unique_;
};

std::vector<Var> obdd_vars(const CnfFormula& f, const VariableOrder& o) {
  if (!f.vars().is_subset_of(o.vars())) throw Error(Errc::ScopeViolation, "order does not cover var(F)");
  std::vector<Var> vars;
  for (Var v : o.sequence())
    if (f.scope().contains(v)) vars.push_back(v);
  return vars;
}

}  // namespace

Circuit reduced_obdd(const CnfFormula& f, const VariableOrder& o, std::size_t limit) {
  const auto vars = obdd_vars(f, o);
  if (vars.size() > limit)
    throw Error(Errc::ScopeTooLarge, std::to_string(vars.size()) + " variables exceed the limit of " + std::to_string(limit));
  const auto table = truth_table(f, vars);
  CircuitBuilder b(f.registry());
  TableReducer reducer(table, vars, b);
  const NodeId root = reducer.build(0, 0, table.size());
  return std::move(b).build(root, f.scope());
}

Circuit reduce_obdd(const Circuit& z) {
  if (z.has_and_nodes()) throw Error(Errc::HasAndNodes, "reduce_obdd expects an AND-free circuit");
  CircuitBuilder b(z.registry());
  std::map<std::tuple<Var, NodeId, NodeId>, NodeId> unique;
  std::vector<NodeId> map(z.num_nodes());
  for (NodeId id : z.topological_order()) {
    const Node& n = z.node(id);
    if (n.is_sink()) {
      map[id] = b.sink(n.value);
      continue;
    }
    const NodeId low = map[n.low], high = map[n.high];
    if (low == high) {
      map[id] = low;
      continue;
    }
    auto [it, fresh] = unique.try_emplace({n.var, low, high}, 0);
    if (fresh) it->second = b.decision(n.var, low, high);
    map[id] = it->second;
  }
  return std::move(b).build(map[z.root()], z.scope());
}

std::size_t decision_count(const Circuit& z) {
  return static_cast<std::size_t>(std::count_if(z.nodes().begin(), z.nodes().end(),
                                                [](const Node& n) { return n.is_decision(); }));
}

MinObddResult min_obdd_size(const CnfFormula& f, std::size_t limit) {
  std::vector<Var> vars = f.scope().to_vector();
  if (vars.size() > limit)
    throw Error(Errc::ScopeTooLarge, std::to_string(vars.size()) + " variables exceed the limit of " + std::to_string(limit));
  const std::size_t m = vars.size();
  const auto base = truth_table(f, vars);
  MinObddResult best{~std::size_t{0}, {}};
  // perm[i] = index into `vars` of the i-th variable of the order.
  std::vector<std::size_t> perm(m);
  for (std::size_t i = 0; i < m; ++i) perm[i] = i;
  std::vector<char> table(base.size());
  std::vector<Var> ordered(m);
  do {
    for (std::size_t i = 0; i < m; ++i) ordered[i] = vars[perm[i]];
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      std::size_t src = 0;
      for (std::size_t i = 0; i < m; ++i)
        if ((idx >> (m - 1 - i)) & 1U) src |= std::size_t{1} << (m - 1 - perm[i]);
      table[idx] = base[src];
    }
    CircuitBuilder b(f.registry());
    TableReducer reducer(table, ordered, b);
    const NodeId root = reducer.build(0, 0, table.size());
    const std::size_t s = 2 * decision_count(std::move(b).build(root, f.scope()));
    if (s < best.size) best = {s, VariableOrder(ordered)};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace kc
