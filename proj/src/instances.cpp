#include "kc/instances.hpp"

#include <algorithm>

#include "kc/error.hpp"

namespace kc {
namespace {

void require_vertices(const Graph& g) {
  if (g.num_vertices() == 0) throw Error(Errc::EmptyGraph, "graph has no vertices");
}

void require_valid(const Graph& g, const TreeDecomposition& d) {
  try {
    validate_decomposition(g, d);
  } catch (const Error& e) {
    throw Error(Errc::InvalidInputDecomposition, e.what());
  }
}

bool linked(const Graph& g, const Edge& a, const Edge& b) {
  for (Vertex x : {a.u, a.v})
    for (Vertex y : {b.u, b.v})
      if (x == y || g.has_edge(x, y)) return true;
  return false;
}

std::size_t bag_holding(const TreeDecomposition& d, std::span<const Vertex> vs) {
  for (std::size_t t = 0; t < d.bags.size(); ++t) {
    const auto& bag = d.bags[t];
    if (std::all_of(vs.begin(), vs.end(),
                    [&](Vertex v) { return std::find(bag.begin(), bag.end(), v) != bag.end(); }))
      return t;
  }
  return d.bags.size();
}

}  // namespace

CnfFormula build_f_g(const Graph& g, std::shared_ptr<const VariableRegistry> names) {
  require_vertices(g);
  std::vector<Var> var_of(g.num_vertices());
  if (!names) {
    auto fresh = std::make_shared<VariableRegistry>();
    for (Vertex v = 0; v < g.num_vertices(); ++v) fresh->add(g.name(v), v);
    names = std::move(fresh);
  }
  VarSet scope;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    var_of[v] = names->id(g.name(v));
    scope.insert(var_of[v]);
  }
  CnfFormula f(names, scope);
  std::vector<Literal> guard;
  for (Var x : var_of) guard.push_back({x, false});
  f.add_clause(std::move(guard), "C_G");
  for (const auto& e : g.edges())
    f.add_clause({{var_of[e.u], true}, {var_of[e.v], true}}, "e_" + g.name(e.u) + "_" + g.name(e.v));
  return f;
}

CnfFormula build_f2_g(const Graph& g) {
  require_vertices(g);
  const auto n = static_cast<Var>(g.num_vertices());
  auto names = std::make_shared<VariableRegistry>();
  for (Vertex v = 0; v < n; ++v) names->add(g.name(v) + "_1", v);
  for (Vertex v = 0; v < n; ++v) names->add(g.name(v) + "_2", n + v);
  CnfFormula f(names, names->all());
  for (const auto& e : g.edges()) {
    const std::string stem = "e_" + g.name(e.u) + "_" + g.name(e.v);
    f.add_clause({{e.u, true}, {n + e.v, true}}, stem + "_12");
    f.add_clause({{n + e.u, true}, {e.v, true}}, stem + "_21");
  }
  std::vector<Literal> c1, c2;
  for (Vertex v = 0; v < n; ++v) {
    c1.push_back({v, false});
    c2.push_back({n + v, false});
  }
  f.add_clause(std::move(c1), "C1");
  f.add_clause(std::move(c2), "C2");
  return f;
}

Var first_copy(const VariableRegistry& names, const Graph& g, Vertex v) { return names.id(g.name(v) + "_1"); }
Var second_copy(const VariableRegistry& names, const Graph& g, Vertex v) { return names.id(g.name(v) + "_2"); }

Graph primal_graph(const CnfFormula& f) {
  Graph g;
  f.scope().for_each([&](Var x) { g.add_vertex(f.variables().name(x)); });
  for (const auto& c : f.clauses())
    for (std::size_t i = 0; i < c.literals.size(); ++i)
      for (std::size_t j = i + 1; j < c.literals.size(); ++j)
        g.add_edge(f.variables().name(c.literals[i].var), f.variables().name(c.literals[j].var));
  return g;
}

IncidenceGraph incidence_graph(const CnfFormula& f) {
  IncidenceGraph out;
  f.scope().for_each([&](Var x) {
    out.graph.add_vertex(f.variables().name(x));
    out.vertex_var.push_back(x);
  });
  out.num_var_vertices = out.graph.num_vertices();
  for (const auto& c : f.clauses()) {
    if (out.graph.find(c.name)) throw Error(Errc::BadParameters, "clause name '" + c.name + "' is already a vertex");
    const Vertex cv = out.graph.add_vertex(c.name);
    for (const auto& lit : c.literals) out.graph.add_edge(out.graph.id(f.variables().name(lit.var)), cv);
  }
  return out;
}

TreeDecomposition primal_to_incidence_decomposition(const CnfFormula& f, const TreeDecomposition& d) {
  const auto scope = f.scope().to_vector();
  auto vertex_of = [&](Var x) {
    return static_cast<Vertex>(std::lower_bound(scope.begin(), scope.end(), x) - scope.begin());
  };
  TreeDecomposition out = d;
  if (out.bags.empty() && !f.clauses().empty()) out.bags.emplace_back();
  for (std::size_t i = 0; i < f.clauses().size(); ++i) {
    const auto& c = f.clauses()[i];
    std::vector<Vertex> bag;
    for (const auto& lit : c.literals) bag.push_back(vertex_of(lit.var));
    const std::size_t host = bag_holding(out, bag);
    if (host == out.bags.size()) throw Error(Errc::ClauseNotInAnyBag, "clause " + c.name);
    bag.push_back(static_cast<Vertex>(scope.size() + i));
    out.bags.push_back(std::move(bag));
    out.tree_edges.emplace_back(host, out.bags.size() - 1);
  }
  return out;
}

TreeDecomposition lift_decomposition_fg(const Graph& g, const TreeDecomposition& d) {
  require_valid(g, d);
  // Incidence vertices: the n variables, then C_G, then the edge clauses.
  const auto n = static_cast<Vertex>(g.num_vertices());
  const Vertex guard = n;
  TreeDecomposition out = d;
  for (auto& bag : out.bags) bag.push_back(guard);
  Vertex clause = n + 1;
  for (const auto& e : g.edges()) {
    const Vertex ends[] = {e.u, e.v};
    const std::size_t host = bag_holding(d, ends);
    out.bags.push_back({e.u, e.v, clause++});
    out.tree_edges.emplace_back(host, out.bags.size() - 1);
  }
  return out;
}

TreeDecomposition lift_decomposition_f2g(const Graph& g, const TreeDecomposition& d) {
  require_valid(g, d);
  // Incidence vertices: u_1 (i), u_2 (n+i), the edge clause pairs in
  // edge order, then C1 and C2.
  const auto n = static_cast<Vertex>(g.num_vertices());
  const auto edges = g.edges();
  const Vertex c1 = 2 * n + 2 * static_cast<Vertex>(edges.size());
  TreeDecomposition out;
  out.tree_edges = d.tree_edges;
  for (const auto& bag : d.bags) {
    std::vector<Vertex> doubled;
    for (Vertex v : bag) doubled.push_back(v);
    for (Vertex v : bag) doubled.push_back(n + v);
    doubled.push_back(c1);
    doubled.push_back(c1 + 1);
    out.bags.push_back(std::move(doubled));
  }
  Vertex clause = 2 * n;
  for (const auto& e : edges) {
    const Vertex ends[] = {e.u, e.v};
    const std::size_t host = bag_holding(d, ends);
    out.bags.push_back({e.u, n + e.v, clause++});
    out.tree_edges.emplace_back(host, out.bags.size() - 1);
    out.bags.push_back({n + e.u, e.v, clause++});
    out.tree_edges.emplace_back(host, out.bags.size() - 1);
  }
  return out;
}

bool is_matching(const Graph& g, const Matching& m) {
  std::vector<char> used(g.num_vertices(), 0);
  for (const auto& e : m) {
    if (e.u >= g.num_vertices() || e.v >= g.num_vertices() || e.u == e.v || !g.has_edge(e.u, e.v)) return false;
    if (used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = 1;
  }
  return true;
}

bool is_induced_matching(const Graph& g, const Matching& m) {
  if (!is_matching(g, m)) return false;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (linked(g, m[i], m[j])) return false;
  return true;
}

Matching extract_induced_matching(const Graph& g, const Matching& m) {
  if (!is_matching(g, m)) throw Error(Errc::NotAMatching, "input is not a matching of the graph");
  Matching remaining = m, out;
  while (!remaining.empty()) {
    const Edge pick = remaining.front();
    out.push_back(pick);
    std::erase_if(remaining, [&](const Edge& e) { return linked(g, pick, e); });
  }
  return out;
}

}  // namespace kc
