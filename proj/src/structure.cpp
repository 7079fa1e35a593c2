#include "kc/structure.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <queue>

#include "kc/error.hpp"

namespace kc {
namespace {

// Breadth-first search from `from` for the first node (other than `from`) accepted by `hit`.
template <class Hit>
std::vector<NodeId> bfs_path(const Circuit& z, NodeId from, Hit hit) {
  std::vector<std::int64_t> parent(z.num_nodes(), -2);
  std::vector<NodeId> queue{from};
  parent[from] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId id = queue[head];
    const Node& n = z.node(id);
    if (id != from && hit(id, n)) {
      std::vector<NodeId> path;
      for (std::int64_t cur = id; cur >= 0; cur = parent[cur]) path.push_back(static_cast<NodeId>(cur));
      std::reverse(path.begin(), path.end());
      return path;
    }
    if (n.is_sink()) continue;
    for (NodeId c : {n.low, n.high}) {
      if (parent[c] == -2) {
        parent[c] = id;
        queue.push_back(c);
      }
    }
  }
  return {from};
}

// Root-anchored path that ends at the first node below `from` testing `v`.
std::vector<NodeId> path_to_var(const Circuit& z, NodeId from, Var v) {
  std::vector<NodeId> path;
  if (from != z.root()) {
    path = bfs_path(z, z.root(), [from](NodeId id, const Node&) { return id == from; });
    path.pop_back();
  }
  const auto tail = bfs_path(z, from, [v](NodeId, const Node& n) { return n.is_decision() && n.var == v; });
  path.insert(path.end(), tail.begin(), tail.end());
  return path;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == '(' || c == ')') {
      flush();
      tokens.emplace_back(1, c);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return tokens;
}

}  // namespace

VariableOrder::VariableOrder(std::vector<Var> sequence) : sequence_(std::move(sequence)) {
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    const Var v = sequence_[i];
    if (v >= position_.size()) position_.resize(v + 1, kAbsent);
    if (position_[v] != kAbsent)
      throw Error(Errc::BadParameters, "variable #" + std::to_string(v) + " repeated in order");
    position_[v] = i;
  }
}

std::size_t VariableOrder::position(Var v) const {
  if (!contains(v)) throw Error(Errc::ScopeViolation, "variable #" + std::to_string(v) + " not in order");
  return position_[v];
}

VarSet VariableOrder::at_most(Var u) const {
  const auto p = position(u);
  return VarSet(std::span<const Var>(sequence_.data(), p + 1));
}

VarSet VariableOrder::before(Var u) const {
  const auto p = position(u);
  return VarSet(std::span<const Var>(sequence_.data(), p));
}

VarSet VariableOrder::after(Var u) const {
  const auto p = position(u);
  return VarSet(std::span<const Var>(sequence_.data() + p + 1, sequence_.size() - p - 1));
}

VarSet VariableOrder::at_least(Var u) const {
  const auto p = position(u);
  return VarSet(std::span<const Var>(sequence_.data() + p, sequence_.size() - p));
}

VariableOrder VariableOrder::restricted(const VarSet& keep) const {
  std::vector<Var> seq;
  for (Var v : sequence_)
    if (keep.contains(v)) seq.push_back(v);
  return VariableOrder(std::move(seq));
}

VariableOrder VariableOrder::parse(std::string_view csv, const VariableRegistry& names) {
  std::vector<Var> seq;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) seq.push_back(names.id(cur));
    cur.clear();
  };
  for (char c : csv) {
    if (c == ',' || c == '<' || std::isspace(static_cast<unsigned char>(c))) flush();
    else cur += c;
  }
  flush();
  return VariableOrder(std::move(seq));
}

std::string VariableOrder::format(const VariableRegistry& names) const {
  std::string out;
  for (Var v : sequence_) {
    if (!out.empty()) out += ',';
    out += names.name(v);
  }
  return out;
}

Vtree Vtree::leaf(Var v) {
  Vtree t;
  t.nodes_.push_back(Node{-1, -1, v});
  t.root_ = 0;
  t.recompute();
  return t;
}

Vtree Vtree::join(const Vtree& left, const Vtree& right) {
  if (left.vars().intersects(right.vars()))
    throw Error(Errc::BadParameters, "vtree leaves must be distinct");
  Vtree t;
  t.nodes_ = left.nodes_;
  const int offset = static_cast<int>(t.nodes_.size());
  for (Node n : right.nodes_) {
    if (!n.is_leaf()) {
      n.left += offset;
      n.right += offset;
    }
    t.nodes_.push_back(n);
  }
  t.nodes_.push_back(Node{left.root_, right.root_ + offset, 0});
  t.root_ = static_cast<int>(t.nodes_.size() - 1);
  t.recompute();
  return t;
}

Vtree Vtree::parse(std::string_view text, const VariableRegistry& names) {
  const auto tokens = tokenize(text);
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error(Errc::ParseError, "vtree: " + what + " at token " + std::to_string(pos));
  };
  auto parse_tree = [&](auto& self) -> Vtree {
    if (pos >= tokens.size()) throw fail("unexpected end");
    const std::string& tok = tokens[pos++];
    if (tok == ")") throw fail("unexpected ')'");
    if (tok != "(") return Vtree::leaf(names.id(tok));
    Vtree l = self(self);
    Vtree r = self(self);
    if (pos >= tokens.size() || tokens[pos] != ")") throw fail("expected ')' (internal nodes have two children)");
    ++pos;
    return Vtree::join(l, r);
  };
  Vtree t = parse_tree(parse_tree);
  if (pos != tokens.size()) throw fail("trailing input");
  return t;
}

std::string Vtree::format(const VariableRegistry& names) const {
  auto rec = [&](auto& self, int id) -> std::string {
    const Node& n = node(id);
    if (n.is_leaf()) return names.name(n.var);
    return "(" + self(self, n.left) + " " + self(self, n.right) + ")";
  };
  return rec(rec, root_);
}

void Vtree::recompute() {
  vars_.assign(nodes_.size(), VarSet{});
  // Children always precede their parent in nodes_.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.is_leaf()) vars_[i].insert(n.var);
    else vars_[i] = vars_[static_cast<std::size_t>(n.left)] | vars_[static_cast<std::size_t>(n.right)];
  }
}

bool is_linear(const Vtree& t) {
  for (const auto& n : t.nodes())
    if (!n.is_leaf() && !t.node(n.left).is_leaf() && !t.node(n.right).is_leaf()) return false;
  return true;
}

Vtree linear_vtree_from_order(const VariableOrder& o) {
  const auto& seq = o.sequence();
  if (seq.empty()) throw Error(Errc::BadParameters, "empty order");
  Vtree t = Vtree::leaf(seq.back());
  for (std::size_t i = seq.size() - 1; i-- > 0;) t = Vtree::join(Vtree::leaf(seq[i]), t);
  return t;
}

std::vector<Vtree> all_vtrees(const std::vector<Var>& vars) {
  if (vars.empty()) return {};
  if (vars.size() == 1) return {Vtree::leaf(vars[0])};
  std::vector<Vtree> out;
  const std::size_t rest = vars.size() - 1;
  // vars[0] always goes left; the right side must be nonempty.
  for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << rest); ++mask) {
    std::vector<Var> left{vars[0]}, right;
    for (std::size_t i = 0; i < rest; ++i) ((mask >> i) & 1U ? left : right).push_back(vars[i + 1]);
    const auto ls = all_vtrees(left);
    const auto rs = all_vtrees(right);
    for (const auto& l : ls)
      for (const auto& r : rs) out.push_back(Vtree::join(l, r));
  }
  return out;
}

ValidationReport respects_vtree(const Circuit& z, const Vtree& t) {
  if (!z.scope().is_subset_of(t.vars()))
    throw Error(Errc::ScopeViolation, "vtree leaves do not cover the circuit scope");
  const auto& zv = z.node_vars();
  const auto& tv = t.node_vars();
  const auto& tn = t.nodes();

  auto split_exists = [&](auto&& accepts) {
    for (std::size_t i = 0; i < tn.size(); ++i) {
      if (tn[i].is_leaf()) continue;
      const auto& a = tv[static_cast<std::size_t>(tn[i].left)];
      const auto& b = tv[static_cast<std::size_t>(tn[i].right)];
      if (accepts(a, b) || accepts(b, a)) return true;
    }
    return false;
  };
  const bool single_leaf = tn.size() == 1;

  ValidationReport report;
  for (NodeId id = 0; id < z.num_nodes(); ++id) {
    const Node& n = z.node(id);
    if (n.is_and()) {
      const auto& s1 = zv[n.left()];
      const auto& s2 = zv[n.right()];
      bool ok = split_exists([&](const VarSet& a, const VarSet& b) {
        return s1.is_subset_of(a) && s2.is_subset_of(b);
      });
      if (!ok && single_leaf) ok = s1.empty() && s2.empty();
      if (!ok)
        report.violations.push_back({ViolationKind::VtreeRespect, {id},
                                     "AND node " + std::to_string(id) + " has no matching vtree split"});
    } else if (n.is_decision()) {
      const VarSet below = zv[n.low] | zv[n.high];
      bool ok = split_exists([&](const VarSet& a, const VarSet& b) {
        return a.contains(n.var) && below.is_subset_of(b);
      });
      if (!ok && single_leaf) ok = below.empty() && tn[0].var == n.var;
      if (!ok)
        report.violations.push_back({ViolationKind::VtreeRespect, {id},
                                     "decision node " + std::to_string(id) + " on " +
                                         z.variables().name(n.var) + " has no matching vtree split"});
    }
  }
  return report;
}

ValidationReport respects_order(const Circuit& z, const VariableOrder& o) {
  if (!circuit_vars(z).is_subset_of(o.vars()))
    throw Error(Errc::ScopeViolation, "order does not cover the circuit variables");
  const auto& zv = z.node_vars();
  ValidationReport report;
  for (NodeId id = 0; id < z.num_nodes(); ++id) {
    const Node& n = z.node(id);
    if (!n.is_decision()) continue;
    const std::size_t p = o.position(n.var);
    const VarSet below = zv[n.low] | zv[n.high];
    below.for_each([&](Var v) {
      if (o.position(v) < p) {
        report.violations.push_back({ViolationKind::OrderRespect, path_to_var(z, id, v),
                                     z.variables().name(v) + " is tested below " +
                                         z.variables().name(n.var) + " at node " + std::to_string(id)});
      }
    });
  }
  return report;
}

std::optional<VariableOrder> find_respected_order(const Circuit& z) {
  const VarSet all = circuit_vars(z);
  const std::size_t cap = all.empty() ? 0 : all.to_vector().back() + 1;
  std::vector<VarSet> succ(cap);
  std::vector<std::size_t> indeg(cap, 0);
  const auto& zv = z.node_vars();
  for (const Node& n : z.nodes()) {
    if (!n.is_decision()) continue;
    const VarSet below = zv[n.low] | zv[n.high];
    below.for_each([&](Var v) {
      if (!succ[n.var].contains(v)) {
        succ[n.var].insert(v);
        ++indeg[v];
      }
    });
  }
  std::priority_queue<Var, std::vector<Var>, std::greater<>> ready;
  all.for_each([&](Var v) {
    if (indeg[v] == 0) ready.push(v);
  });
  std::vector<Var> seq;
  while (!ready.empty()) {
    const Var v = ready.top();
    ready.pop();
    seq.push_back(v);
    succ[v].for_each([&](Var w) {
      if (--indeg[w] == 0) ready.push(w);
    });
  }
  if (seq.size() != all.size()) return std::nullopt;
  return VariableOrder(std::move(seq));
}

std::optional<std::vector<NodeId>> has_decision_path(const Circuit& z, const VarSet& vars) {
  constexpr int kBlocked = std::numeric_limits<int>::min();
  std::vector<int> best(z.num_nodes(), kBlocked);
  for (NodeId id : z.topological_order()) {
    const Node& n = z.node(id);
    if (n.is_sink()) {
      best[id] = 0;
    } else if (n.is_decision()) {
      const int below = std::max(best[n.low], best[n.high]);
      if (below != kBlocked) best[id] = below + (vars.contains(n.var) ? 1 : 0);
    }
  }
  if (best[z.root()] != static_cast<int>(vars.size())) return std::nullopt;
  std::vector<NodeId> path;
  NodeId cur = z.root();
  while (!z.node(cur).is_sink()) {
    path.push_back(cur);
    const Node& n = z.node(cur);
    cur = best[n.low] >= best[n.high] ? n.low : n.high;
  }
  return path;
}

}  // namespace kc
