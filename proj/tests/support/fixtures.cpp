#include "fixtures.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace kc::test {

std::shared_ptr<VariableRegistry> make_registry(const std::vector<std::string>& names) {
  auto r = std::make_shared<VariableRegistry>();
  for (const auto& n : names) r->add(n);
  return r;
}

Circuit reference_circuit() {
  auto names = make_registry({"x", "y", "z"});
  CircuitBuilder b(names);
  const NodeId f = b.sink(false), t = b.sink(true);
  const NodeId z_pos = b.decision(2, f, t);
  const NodeId z_neg = b.decision(2, t, f);
  const NodeId y_pos = b.decision(1, f, t);
  const NodeId one_of = b.decision(1, z_pos, z_neg);
  const NodeId both = b.conjunction(y_pos, z_pos);
  const NodeId root = b.decision(0, both, one_of);
  return std::move(b).build(root, VarSet{0, 1, 2});
}

Vtree reference_vtree(const VariableRegistry& names) { return Vtree::parse("(x (y z))", names); }

Circuit unordered_structured_circuit() {
  auto names = make_registry({"x", "y", "z"});
  CircuitBuilder b(names);
  const NodeId f = b.sink(false), t = b.sink(true);
  // x=1: z then y; x=0: y then z. Both compute y XOR z.
  const NodeId y_pos = b.decision(1, f, t), y_neg = b.decision(1, t, f);
  const NodeId z_pos = b.decision(2, f, t), z_neg = b.decision(2, t, f);
  const NodeId high = b.decision(2, y_pos, y_neg);
  const NodeId low = b.decision(1, z_pos, z_neg);
  return std::move(b).build(b.decision(0, low, high), VarSet{0, 1, 2});
}

std::vector<char> truth_table(const Circuit& z, const std::vector<Var>& vars) {
  const std::size_t rows = std::size_t{1} << vars.size();
  std::map<Var, std::size_t> bit;
  for (std::size_t i = 0; i < vars.size(); ++i) bit[vars[i]] = i;
  std::vector<std::vector<char>> value(z.num_nodes());
  for (NodeId id : z.topological_order()) {
    const Node& n = z.node(id);
    auto& out = value[id];
    out.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      switch (n.kind) {
        case NodeKind::Sink: out[r] = n.value; break;
        case NodeKind::And: out[r] = value[n.low][r] && value[n.high][r]; break;
        case NodeKind::Decision: out[r] = ((r >> bit.at(n.var)) & 1U) ? value[n.high][r] : value[n.low][r]; break;
      }
    }
  }
  return value[z.root()];
}

std::vector<char> truth_table(const CnfFormula& f, const std::vector<Var>& vars) {
  const std::size_t rows = std::size_t{1} << vars.size();
  std::map<Var, std::size_t> bit;
  for (std::size_t i = 0; i < vars.size(); ++i) bit[vars[i]] = i;
  std::vector<char> out(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    bool sat = true;
    for (const auto& c : f.clauses()) {
      bool any = false;
      for (const auto& l : c.literals) any = any || (((r >> bit.at(l.var)) & 1U) == (l.positive ? 1U : 0U));
      sat = sat && any;
    }
    out[r] = sat;
  }
  return out;
}

std::uint64_t ones(const std::vector<char>& table) {
  return static_cast<std::uint64_t>(std::count(table.begin(), table.end(), 1));
}

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Vtree random_vtree(Rng& rng, const std::vector<Var>& vars, bool linear) {
  if (vars.size() == 1) return Vtree::leaf(vars.front());
  std::vector<Var> rest = vars;
  std::shuffle(rest.begin(), rest.end(), rng);
  std::vector<Var> left, right;
  if (linear) {
    left = {rest.back()};
    rest.pop_back();
    right = rest;
  } else {
    const std::size_t cut = 1 + pick(rng, rest.size() - 1);
    left.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(cut));
    right.assign(rest.begin() + static_cast<std::ptrdiff_t>(cut), rest.end());
  }
  Vtree a = random_vtree(rng, left, linear), b = random_vtree(rng, right, linear);
  return coin(rng) ? Vtree::join(a, b) : Vtree::join(b, a);
}

namespace {

class StructuredGen {
 public:
  StructuredGen(Rng& rng, const Vtree& t, CircuitBuilder& b) : rng_(rng), t_(t), b_(b), pool_(t.nodes().size()) {}

  NodeId gen(int node, int depth) {
    auto& pool = pool_[static_cast<std::size_t>(node)];
    if (!pool.empty() && coin(rng_, 0.3)) return pool[pick(rng_, pool.size())];
    const NodeId made = fresh(node, depth);
    pool.push_back(made);
    return made;
  }

 private:
  NodeId sink() { return b_.sink(coin(rng_, 0.6)); }

  NodeId fresh(int node, int depth) {
    const auto& n = t_.node(node);
    if (n.is_leaf()) {
      if (coin(rng_, 0.2)) return sink();
      return b_.decision(n.var, sink(), sink());
    }
    if (depth > 12 || coin(rng_, 0.05)) return sink();
    const double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    int a = n.left, c = n.right;
    if (coin(rng_)) std::swap(a, c);
    if (r < 0.4) {
      return b_.conjunction(gen(a, depth + 1), gen(c, depth + 1));
    }
    if (r < 0.85) {
      // Decision on a variable of one side, children over the other side.
      const auto vars = t_.node_vars()[static_cast<std::size_t>(a)].to_vector();
      const Var x = vars[pick(rng_, vars.size())];
      return b_.decision(x, gen(c, depth + 1), gen(c, depth + 1));
    }
    return gen(a, depth + 1);
  }

  Rng& rng_;
  const Vtree& t_;
  CircuitBuilder& b_;
  std::vector<std::vector<NodeId>> pool_;
};

class OrderedGen {
 public:
  OrderedGen(Rng& rng, CircuitBuilder& b) : rng_(rng), b_(b) {}

  NodeId gen(const std::vector<Var>& avail, int depth) {
    auto& pool = pool_[avail];
    if (!pool.empty() && coin(rng_, 0.35)) return pool[pick(rng_, pool.size())];
    const NodeId made = fresh(avail, depth);
    pool.push_back(made);
    return made;
  }

 private:
  NodeId fresh(const std::vector<Var>& avail, int depth) {
    if (avail.empty() || coin(rng_, 0.08) || depth > 14) return b_.sink(coin(rng_, 0.6));
    if (avail.size() >= 2 && coin(rng_, 0.3)) {
      std::vector<Var> left, right;
      for (Var v : avail) (coin(rng_) ? left : right).push_back(v);
      if (left.empty()) left.push_back(right.back()), right.pop_back();
      if (right.empty()) right.push_back(left.back()), left.pop_back();
      std::sort(left.begin(), left.end(), [&](Var a, Var b) { return rank(avail, a) < rank(avail, b); });
      std::sort(right.begin(), right.end(), [&](Var a, Var b) { return rank(avail, a) < rank(avail, b); });
      return b_.conjunction(gen(left, depth + 1), gen(right, depth + 1));
    }
    // Mostly test the first available variable, sometimes skip ahead.
    std::size_t j = coin(rng_, 0.7) ? 0 : pick(rng_, avail.size());
    const std::vector<Var> rest(avail.begin() + static_cast<std::ptrdiff_t>(j) + 1, avail.end());
    return b_.decision(avail[j], gen(rest, depth + 1), gen(rest, depth + 1));
  }

  static std::size_t rank(const std::vector<Var>& avail, Var v) {
    return static_cast<std::size_t>(std::find(avail.begin(), avail.end(), v) - avail.begin());
  }

  Rng& rng_;
  CircuitBuilder& b_;
  std::map<std::vector<Var>, std::vector<NodeId>> pool_;
};

NodeId fbdd_gen(Rng& rng, CircuitBuilder& b, std::vector<Var> avail, int depth) {
  if (avail.empty() || coin(rng, 0.1) || depth > 12) return b.sink(coin(rng, 0.6));
  const std::size_t j = pick(rng, avail.size());
  const Var x = avail[j];
  avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(j));
  return b.decision(x, fbdd_gen(rng, b, avail, depth + 1), fbdd_gen(rng, b, avail, depth + 1));
}

}  // namespace

Circuit random_structured(Rng& rng, const Vtree& t, std::shared_ptr<const VariableRegistry> names,
                          const VarSet& scope) {
  CircuitBuilder b(std::move(names));
  StructuredGen gen(rng, t, b);
  const NodeId root = gen.gen(t.root(), 0);
  return std::move(b).build(root, scope);
}

Circuit random_and_obdd(Rng& rng, const VariableOrder& o, std::shared_ptr<const VariableRegistry> names,
                        const VarSet& scope) {
  CircuitBuilder b(std::move(names));
  OrderedGen gen(rng, b);
  const NodeId root = gen.gen(o.sequence(), 0);
  return std::move(b).build(root, scope);
}

Circuit random_fbdd(Rng& rng, const std::vector<Var>& vars, std::shared_ptr<const VariableRegistry> names,
                    const VarSet& scope) {
  CircuitBuilder b(std::move(names));
  const NodeId root = fbdd_gen(rng, b, vars, 0);
  return std::move(b).build(root, scope);
}

CnfFormula random_cnf(Rng& rng, std::size_t n, std::size_t clauses, std::size_t max_width) {
  auto names = std::make_shared<VariableRegistry>();
  for (std::size_t i = 0; i < n; ++i) names->add("x" + std::to_string(i));
  CnfFormula f(names, names->all());
  for (std::size_t c = 0; c < clauses; ++c) {
    const std::size_t w = 1 + pick(rng, std::min(max_width, n));
    std::vector<Var> vs(n);
    std::iota(vs.begin(), vs.end(), Var{0});
    std::shuffle(vs.begin(), vs.end(), rng);
    std::vector<Literal> lits;
    for (std::size_t i = 0; i < w; ++i) lits.push_back({vs[i], coin(rng)});
    f.add_clause(std::move(lits));
  }
  return f;
}

Graph random_graph(Rng& rng, std::size_t n, double p) { return random_connected_graph(n, p, rng()); }

std::vector<Graph> connected_graphs_up_to_iso(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::set<std::uint64_t> seen;
  std::vector<Graph> out;
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1U) adj[pairs[i].first][pairs[i].second] = adj[pairs[i].second][pairs[i].first] = 1;
    // Connectivity.
    std::vector<char> seen_v(n, 0);
    std::vector<std::size_t> stack{0};
    seen_v[0] = 1;
    std::size_t count = 0;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      ++count;
      for (std::size_t v = 0; v < n; ++v)
        if (adj[u][v] && !seen_v[v]) seen_v[v] = 1, stack.push_back(v);
    }
    if (count != n) continue;
    std::uint64_t canon = ~std::uint64_t{0};
    for (const auto& perm : perms) {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (adj[perm[pairs[i].first]][perm[pairs[i].second]]) code |= std::uint64_t{1} << i;
      canon = std::min(canon, code);
    }
    if (!seen.insert(canon).second) continue;
    Graph g;
    for (std::size_t v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v));
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1U) g.add_edge(pairs[i].first, pairs[i].second);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<VariableOrder> all_orders(std::vector<Var> vars) {
  std::sort(vars.begin(), vars.end());
  std::vector<VariableOrder> out;
  do out.emplace_back(vars);
  while (std::next_permutation(vars.begin(), vars.end()));
  return out;
}

}  // namespace kc::test
