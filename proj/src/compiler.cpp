#include "kc/compiler.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "kc/error.hpp"

namespace kc {
namespace {

using Lits = std::vector<Literal>;
using Residual = std::vector<Lits>;  // sorted, duplicate-free

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept {
    return boost::hash_range(key.begin(), key.end());
  }
};

std::vector<std::uint32_t> encode(const Residual& r) {
  std::vector<std::uint32_t> key;
  for (const auto& c : r) {
    for (const auto& l : c) key.push_back(2 * l.var + (l.positive ? 1 : 0));
    key.push_back(~std::uint32_t{0});
  }
  return key;
}

Residual assign(const Residual& r, Var x, bool value) {
  Residual out;
  out.reserve(r.size());
  for (const auto& c : r) {
    auto it = std::find_if(c.begin(), c.end(), [&](const Literal& l) { return l.var == x; });
    if (it == c.end()) {
      out.push_back(c);
    } else if (it->positive != value) {
      Lits shorter = c;
      shorter.erase(shorter.begin() + (it - c.begin()));
      out.push_back(std::move(shorter));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class Compiler {
 public:
  Compiler(const CnfFormula& f, const CompileConfig& cfg) : f_(f), cfg_(cfg), builder_(f.registry()) {
    if (const auto* order = std::get_if<VariableOrder>(&cfg.mode)) {
      if (!f.vars().is_subset_of(order->vars()))
        throw Error(Errc::ScopeViolation, "compile order does not cover var(F)");
      rank_.assign(f.variables().capacity(), 0);
      for (Var v : order->sequence())
        if (v < rank_.size()) rank_[v] = order->position(v);
    } else {
      // Rank by name so that every tie-break is a rank comparison.
      std::vector<Var> ids;
      f.vars().for_each([&](Var v) { ids.push_back(v); });
      std::sort(ids.begin(), ids.end(),
                [&](Var a, Var b) { return f.variables().name(a) < f.variables().name(b); });
      rank_.assign(f.variables().capacity(), 0);
      for (std::size_t i = 0; i < ids.size(); ++i) rank_[ids[i]] = i;
    }
  }

  Circuit run() {
    Residual r;
    for (const auto& c : f_.clauses()) r.push_back(c.literals);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    const NodeId root = solve(r);
    return std::move(builder_).build(root, f_.scope());
  }

 private:
  NodeId solve(const Residual& r) {
    if (r.empty()) return builder_.sink(true);
    if (r.front().empty()) return builder_.sink(false);  // the empty clause sorts first

    std::vector<std::uint32_t> key;
    if (cfg_.caching == Caching::ResidualFormulaKey) {
      key = encode(r);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }

    NodeId result;
    auto parts = cfg_.component_split ? components(r) : std::vector<Residual>{};
    if (parts.size() > 1) {
      result = solve(parts[0]);
      for (std::size_t i = 1; i < parts.size(); ++i) result = builder_.conjunction(result, solve(parts[i]));
    } else {
      const Var x = branch_variable(r);
      const NodeId low = solve(assign(r, x, false));
      const NodeId high = solve(assign(r, x, true));
      result = builder_.decision(x, low, high);
    }
    if (cfg_.caching == Caching::ResidualFormulaKey) cache_.emplace(std::move(key), result);
    return result;
  }

  Var branch_variable(const Residual& r) const {
    const bool by_degree = std::holds_alternative<Heuristic>(cfg_.mode) &&
                           std::get<Heuristic>(cfg_.mode) == Heuristic::MinDegree;
    std::unordered_map<Var, VarSet> nbrs;
    for (const auto& c : r)
      for (const auto& l : c) {
        auto& set = nbrs[l.var];
        for (const auto& m : c)
          if (m.var != l.var) set.insert(m.var);
      }
    Var best = r.front().front().var;
    std::size_t best_degree = nbrs[best].size();
    for (const auto& [v, set] : nbrs) {
      const std::size_t d = by_degree ? set.size() : 0;
      const std::size_t bd = by_degree ? best_degree : 0;
      if (d < bd || (d == bd && rank_[v] < rank_[best])) {
        best = v;
        best_degree = set.size();
      }
    }
    return best;
  }

  // Connected components of the residual primal graph, ordered by their
  // best-ranked variable.
  std::vector<Residual> components(const Residual& r) const {
    std::unordered_map<Var, Var> parent;
    auto find = [&](Var v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& c : r)
      for (const auto& l : c) parent.try_emplace(l.var, l.var);
    for (const auto& c : r)
      for (std::size_t i = 1; i < c.size(); ++i) {
        const Var a = find(c[0].var), b = find(c[i].var);
        if (a == b) continue;
        // Keep the best-ranked variable as the representative.
        if (rank_[a] < rank_[b]) parent[b] = a;
        else parent[a] = b;
      }
    std::vector<Var> roots;
    for (const auto& [v, p] : parent)
      if (find(v) == v) roots.push_back(v);
    if (roots.size() < 2) return {};
    std::sort(roots.begin(), roots.end(), [&](Var a, Var b) { return rank_[a] < rank_[b]; });
    std::vector<Residual> out(roots.size());
    for (const auto& c : r) {
      const Var root = find(c.front().var);
      const auto idx = std::find(roots.begin(), roots.end(), root) - roots.begin();
      out[static_cast<std::size_t>(idx)].push_back(c);
    }
    return out;
  }

  const CnfFormula& f_;
  const CompileConfig& cfg_;
  CircuitBuilder builder_;
  std::vector<std::size_t> rank_;
  std::unordered_map<std::vector<std::uint32_t>, NodeId, KeyHash> cache_;
};

}  // namespace

std::string_view to_string(Heuristic h) noexcept {
  return h == Heuristic::MinDegree ? "MinDegree" : "LexFirst";
}

Circuit compile(const CnfFormula& f, const CompileConfig& cfg) { return Compiler(f, cfg).run(); }

}  // namespace kc
