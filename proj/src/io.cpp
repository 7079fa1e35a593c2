#include "kc/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "kc/error.hpp"

namespace kc {
namespace {

[[noreturn]] void fail(std::size_t lineno, const std::string& what) {
  throw Error(Errc::ParseError, "circuit line " + std::to_string(lineno) + ": " + what);
}

template <class T>
bool parse_number(const std::string& s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

CircuitDescription read_circuit_description(std::istream& in) {
  auto names = std::make_shared<VariableRegistry>();
  CircuitDescription d;
  std::vector<char> defined;
  bool header = false, scope_given = false, nodes_started = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (!header) {
      std::size_t count = 0;
      if (tok.size() != 3 || tok[0] != "afbdd" || !parse_number(tok[1], count) || !parse_number(tok[2], d.root))
        fail(lineno, "expected header 'afbdd <numNodes> <rootId>'");
      d.nodes.assign(count, Node::sink(false));
      defined.assign(count, 0);
      header = true;
      continue;
    }

    const std::string& kind = tok[0];
    auto node_id = [&](const std::string& s) {
      NodeId id = 0;
      if (!parse_number(s, id)) fail(lineno, "bad node id '" + s + "'");
      return id;
    };
    auto slot = [&](const std::string& s) -> Node& {
      const NodeId id = node_id(s);
      if (id >= d.nodes.size()) fail(lineno, "node id " + s + " exceeds the declared node count");
      if (defined[id]) fail(lineno, "node " + s + " defined twice");
      defined[id] = 1;
      nodes_started = true;
      return d.nodes[id];
    };

    if (kind == "v") {
      if (nodes_started) fail(lineno, "variables must be declared before nodes");
      Var id = 0;
      if (tok.size() != 3 || !parse_number(tok[2], id)) fail(lineno, "expected 'v <name> <id>'");
      names->add(tok[1], id);
    } else if (kind == "scope") {
      scope_given = true;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const auto v = names->find(tok[i]);
        if (!v) fail(lineno, "undeclared variable '" + tok[i] + "'");
        d.scope.insert(*v);
      }
    } else if (kind == "D") {
      if (tok.size() != 5) fail(lineno, "expected 'D <id> <var> <lowId> <highId>'");
      Var var = 0;
      if (auto v = names->find(tok[2])) var = *v;
      else if (!parse_number(tok[2], var) || !names->contains(var)) fail(lineno, "undeclared variable '" + tok[2] + "'");
      slot(tok[1]) = Node::decision(var, node_id(tok[3]), node_id(tok[4]));
    } else if (kind == "A") {
      if (tok.size() != 4) fail(lineno, "expected 'A <id> <leftId> <rightId>'");
      slot(tok[1]) = Node::conjunction(node_id(tok[2]), node_id(tok[3]));
    } else if (kind == "S") {
      if (tok.size() != 3 || (tok[2] != "0" && tok[2] != "1")) fail(lineno, "expected 'S <id> <0|1>'");
      slot(tok[1]) = Node::sink(tok[2] == "1");
    } else {
      fail(lineno, "unknown record '" + kind + "'");
    }
  }
  if (!header) throw Error(Errc::ParseError, "missing 'afbdd' header");
  if (d.root >= d.nodes.size() || !defined[d.root]) throw Error(Errc::DanglingRef, "root node is not defined");
  for (std::size_t id = 0; id < d.nodes.size(); ++id) {
    const Node& n = d.nodes[id];
    if (!defined[id] || n.is_sink()) continue;
    for (NodeId c : {n.low, n.high})
      if (c >= d.nodes.size() || !defined[c])
        throw Error(Errc::DanglingRef, "node " + std::to_string(id) + " points to undefined node " + std::to_string(c));
  }
  if (!scope_given) d.scope = names->all();
  d.variables = std::move(names);
  return d;
}

Circuit read_circuit(std::istream& in) { return build_circuit(read_circuit_description(in)); }

void write_circuit(std::ostream& out, const Circuit& z) {
  const auto& names = z.variables();
  out << "afbdd " << z.num_nodes() << ' ' << z.root() << '\n';
  names.all().for_each([&](Var v) { out << "v " << names.name(v) << ' ' << v << '\n'; });
  if (!(z.scope() == names.all())) {
    out << "scope";
    z.scope().for_each([&](Var v) { out << ' ' << names.name(v); });
    out << '\n';
  }
  for (NodeId id = 0; id < z.num_nodes(); ++id) {
    const Node& n = z.node(id);
    switch (n.kind) {
      case NodeKind::Decision: out << "D " << id << ' ' << names.name(n.var) << ' ' << n.low << ' ' << n.high << '\n'; break;
      case NodeKind::And: out << "A " << id << ' ' << n.left() << ' ' << n.right() << '\n'; break;
      case NodeKind::Sink: out << "S " << id << ' ' << (n.value ? 1 : 0) << '\n'; break;
    }
  }
}

void write_circuit_dot(std::ostream& out, const Circuit& z) {
  out << "digraph circuit {\n";
  for (NodeId id = 0; id < z.num_nodes(); ++id) {
    const Node& n = z.node(id);
    out << "  n" << id;
    switch (n.kind) {
      case NodeKind::Decision:
        out << " [label=\"" << z.variables().name(n.var) << "\"];\n";
        out << "  n" << id << " -> n" << n.low << " [style=dashed,label=\"0\"];\n";
        out << "  n" << id << " -> n" << n.high << " [label=\"1\"];\n";
        break;
      case NodeKind::And:
        out << " [label=\"AND\",shape=box];\n";
        out << "  n" << id << " -> n" << n.left() << ";\n";
        out << "  n" << id << " -> n" << n.right() << ";\n";
        break;
      case NodeKind::Sink: out << " [label=\"" << (n.value ? 1 : 0) << "\",shape=square];\n"; break;
    }
  }
  out << "}\n";
}

std::string trace_to_json(const TransformTrace& trace) {
  nlohmann::json j;
  j["steps"] = nlohmann::json::array();
  for (const auto& s : trace.steps) j["steps"].push_back({{"andNode", s.and_node}, {"case", std::string(to_string(s.kind))}});
  j["sizeBefore"] = trace.size_before;
  j["sizeAfter"] = trace.size_after;
  return j.dump(2);
}

}  // namespace kc
