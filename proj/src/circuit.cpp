#include "kc/circuit.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

#include "kc/error.hpp"

namespace kc {
namespace {

std::string describe_path(const std::vector<NodeId>& path) {
  std::string out;
  for (NodeId id : path) {
    if (!out.empty()) out += " -> ";
    out += std::to_string(id);
  }
  return out;
}

int num_children(const Node& n) { return n.is_sink() ? 0 : 2; }

NodeId child(const Node& n, int i) { return i == 0 ? n.low : n.high; }

// Iterative DFS from `root`; returns reachable nodes in post-order.
// Throws CyclicGraph with the cycle as witness.
std::vector<NodeId> post_order(const std::vector<Node>& nodes, NodeId root) {
  std::vector<std::uint8_t> colour(nodes.size(), 0);
  std::vector<std::pair<NodeId, int>> stack;
  std::vector<NodeId> order;
  stack.emplace_back(root, 0);
  colour[root] = 1;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const Node& n = nodes[id];
    if (next < num_children(n)) {
      const NodeId c = child(n, next++);
      if (colour[c] == 1) {
        std::vector<NodeId> cycle;
        auto it = std::find_if(stack.begin(), stack.end(),
                               [c](const auto& frame) { return frame.first == c; });
        for (; it != stack.end(); ++it) cycle.push_back(it->first);
        cycle.push_back(c);
        throw Error(Errc::CyclicGraph, "cycle " + describe_path(cycle));
      }
      if (colour[c] == 0) {
        colour[c] = 1;
        stack.emplace_back(c, 0);
      }
    } else {
      colour[id] = 2;
      order.push_back(id);
      stack.pop_back();
    }
  }
  return order;
}

// Shortest path from `from` to a decision node on `v`.
std::vector<NodeId> path_to_variable(const std::vector<Node>& nodes, NodeId from, Var v) {
  std::vector<std::int64_t> parent(nodes.size(), -2);
  std::vector<NodeId> queue{from};
  parent[from] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId id = queue[head];
    const Node& n = nodes[id];
    if (n.is_decision() && n.var == v) {
      std::vector<NodeId> path;
      for (std::int64_t cur = id; cur >= 0; cur = parent[cur]) path.push_back(static_cast<NodeId>(cur));
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int i = 0; i < num_children(n); ++i) {
      const NodeId c = child(n, i);
      if (parent[c] == -2) {
        parent[c] = id;
        queue.push_back(c);
      }
    }
  }
  return {};
}

}  // namespace

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::ReadOnce: return "ReadOnce";
    case ViolationKind::Decomposability: return "Decomposability";
    case ViolationKind::OrderRespect: return "OrderRespect";
    case ViolationKind::VtreeRespect: return "VtreeRespect";
    case ViolationKind::Acyclicity: return "Acyclicity";
  }
  return "Unknown";
}

bool Circuit::has_and_nodes() const noexcept {
  return std::any_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_and(); });
}

CircuitDescription Circuit::description() const { return {nodes_, root_, scope_, variables_}; }

Circuit build_circuit(CircuitDescription d) {
  if (!d.variables) d.variables = std::make_shared<VariableRegistry>();
  const auto& nodes = d.nodes;
  if (nodes.empty() || d.root >= nodes.size())
    throw Error(Errc::DanglingRef, "root " + std::to_string(d.root) + " does not name a node");
  for (NodeId id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    for (int i = 0; i < num_children(n); ++i)
      if (child(n, i) >= nodes.size())
        throw Error(Errc::DanglingRef, "node " + std::to_string(id) + " points to missing node " +
                                           std::to_string(child(n, i)));
    if (n.is_decision() && !d.scope.contains(n.var))
      throw Error(Errc::ScopeViolation, "node " + std::to_string(id) + " tests " +
                                            d.variables->name(n.var) + " outside the declared scope");
  }

  const std::vector<NodeId> order = post_order(nodes, d.root);

  std::vector<VarSet> vars(nodes.size());
  for (NodeId id : order) {
    const Node& n = nodes[id];
    if (n.is_sink()) continue;
    VarSet below = vars[n.low] | vars[n.high];
    if (n.is_decision()) {
      if (below.contains(n.var)) {
        const NodeId c = vars[n.low].contains(n.var) ? n.low : n.high;
        std::vector<NodeId> path{id};
        for (NodeId p : path_to_variable(nodes, c, n.var)) path.push_back(p);
        throw Error(Errc::RepeatedVariableOnPath,
                    d.variables->name(n.var) + " tested twice on path " + describe_path(path));
      }
      below.insert(n.var);
    }
    vars[id] = std::move(below);
  }

  // Compact reachable nodes, preserving relative order.
  std::vector<NodeId> reachable = order;
  std::sort(reachable.begin(), reachable.end());
  std::vector<NodeId> remap(nodes.size(), 0);
  for (NodeId i = 0; i < reachable.size(); ++i) remap[reachable[i]] = i;

  Circuit z;
  z.nodes_.reserve(reachable.size());
  z.vars_.reserve(reachable.size());
  for (NodeId old : reachable) {
    Node n = nodes[old];
    if (!n.is_sink()) {
      n.low = remap[n.low];
      n.high = remap[n.high];
    }
    z.nodes_.push_back(n);
    z.vars_.push_back(std::move(vars[old]));
  }
  z.root_ = remap[d.root];
  z.topo_.reserve(order.size());
  for (NodeId old : order) z.topo_.push_back(remap[old]);
  z.scope_ = std::move(d.scope);
  z.variables_ = std::move(d.variables);
  return z;
}

Circuit build_circuit(std::vector<Node> nodes, NodeId root, VarSet scope,
                      std::shared_ptr<const VariableRegistry> variables) {
  return build_circuit(CircuitDescription{std::move(nodes), root, std::move(scope), std::move(variables)});
}

NodeId CircuitBuilder::add(const Node& node) {
  nodes_.push_back(node);
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId CircuitBuilder::decision(Var v, NodeId low, NodeId high) { return add(Node::decision(v, low, high)); }

NodeId CircuitBuilder::conjunction(NodeId left, NodeId right) { return add(Node::conjunction(left, right)); }

NodeId CircuitBuilder::sink(bool value) {
  auto& slot = sinks_[value ? 1 : 0];
  if (slot < 0) slot = add(Node::sink(value));
  return static_cast<NodeId>(slot);
}

NodeId CircuitBuilder::fresh_sink(bool value) { return add(Node::sink(value)); }

Circuit CircuitBuilder::build(NodeId root, VarSet scope) && {
  return build_circuit(std::move(nodes_), root, std::move(scope), std::move(variables_));
}

Circuit CircuitBuilder::build(NodeId root, VarSet scope) const& {
  return build_circuit(nodes_, root, std::move(scope), variables_);
}

Circuit constant_circuit(bool value, VarSet scope, std::shared_ptr<const VariableRegistry> variables) {
  return build_circuit({Node::sink(value)}, 0, std::move(scope), std::move(variables));
}

std::size_t size(const Circuit& z) {
  std::size_t edges = 0;
  for (const Node& n : z.nodes()) edges += static_cast<std::size_t>(num_children(n));
  return edges;
}

const std::vector<VarSet>& subcircuit_vars(const Circuit& z) { return z.node_vars(); }

VarSet circuit_vars(const Circuit& z) { return z.node_vars()[z.root()]; }

Circuit subcircuit(const Circuit& z, NodeId alpha) {
  auto d = z.description();
  d.root = alpha;
  return build_circuit(std::move(d));
}

ValidationReport validate_decomposable(const Circuit& z) {
  ValidationReport report;
  const auto& vars = z.node_vars();
  for (NodeId id = 0; id < z.num_nodes(); ++id) {
    const Node& n = z.node(id);
    if (!n.is_and()) continue;
    if (auto shared = vars[n.left()].first_common(vars[n.right()])) {
      report.violations.push_back({ViolationKind::Decomposability,
                                   {id, n.left(), n.right()},
                                   "AND node " + std::to_string(id) + " has " +
                                       z.variables().name(*shared) + " on both sides"});
    }
  }
  return report;
}

Circuit normalize(const Circuit& z) {
  if (!validate_decomposable(z).ok())
    throw Error(Errc::NotDecomposable, "normalize requires a decision-DNNF");
  const auto& vars = z.node_vars();

  // Constant value of each variable-free node (path semantics: no 0-sink below).
  std::vector<bool> constant(z.num_nodes(), false);
  for (NodeId id : z.topological_order()) {
    const Node& n = z.node(id);
    if (n.is_sink()) constant[id] = n.value;
    else if (vars[id].empty()) constant[id] = constant[n.low] && constant[n.high];
  }
  if (vars[z.root()].empty()) return constant_circuit(constant[z.root()], z.scope(), z.registry());

  CircuitBuilder b(z.registry());
  std::vector<NodeId> image(z.num_nodes(), 0);
  auto target = [&](NodeId c) { return vars[c].empty() ? b.fresh_sink(constant[c]) : image[c]; };
  for (NodeId id : z.topological_order()) {
    const Node& n = z.node(id);
    if (vars[id].empty()) continue;
    const NodeId lo = target(n.low);
    const NodeId hi = target(n.high);
    image[id] = n.is_decision() ? b.decision(n.var, lo, hi) : b.conjunction(lo, hi);
  }
  return std::move(b).build(image[z.root()], z.scope());
}

Circuit merge_isomorphic(const Circuit& z) {
  CircuitBuilder b(z.registry());
  std::map<std::tuple<NodeKind, Var, NodeId, NodeId, bool>, NodeId> unique;
  std::vector<NodeId> image(z.num_nodes(), 0);
  for (NodeId id : z.topological_order()) {
    Node n = z.node(id);
    if (!n.is_sink()) {
      n.low = image[n.low];
      n.high = image[n.high];
    }
    const auto key = std::make_tuple(n.kind, n.var, n.low, n.high, n.value);
    auto [it, inserted] = unique.try_emplace(key, 0);
    if (inserted) it->second = b.add(n);
    image[id] = it->second;
  }
  return std::move(b).build(image[z.root()], z.scope());
}

bool isomorphic(const Circuit& a, const Circuit& b) {
  if (a.num_nodes() != b.num_nodes() || !(a.scope() == b.scope())) return false;
  constexpr NodeId kUnset = ~NodeId{0};
  std::vector<NodeId> forward(a.num_nodes(), kUnset), backward(b.num_nodes(), kUnset);
  std::vector<std::pair<NodeId, NodeId>> stack{{a.root(), b.root()}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (forward[x] != kUnset || backward[y] != kUnset) {
      if (forward[x] != y || backward[y] != x) return false;
      continue;
    }
    const Node& nx = a.node(x);
    const Node& ny = b.node(y);
    if (nx.kind != ny.kind) return false;
    if (nx.is_sink() && nx.value != ny.value) return false;
    if (nx.is_decision() && nx.var != ny.var) return false;
    forward[x] = y;
    backward[y] = x;
    if (!nx.is_sink()) {
      stack.emplace_back(nx.low, ny.low);
      stack.emplace_back(nx.high, ny.high);
    }
  }
  return true;
}

}  // namespace kc
