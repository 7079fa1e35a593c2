#include "kc/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "kc/error.hpp"

namespace kc {
namespace {

// Portable bounded draw (std distributions are implementation-defined).
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return x % n;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Graph named_vertices(std::size_t n, const std::string& prefix) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(prefix + std::to_string(i));
  return g;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

Vertex Graph::add_vertex(const std::string& name) {
  if (auto v = find(name)) return *v;
  if (name.empty()) throw Error(Errc::BadParameters, "empty vertex name");
  names_.push_back(name);
  adjacency_.emplace_back();
  return static_cast<Vertex>(names_.size() - 1);
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= num_vertices() || v >= num_vertices()) throw Error(Errc::BadParameters, "edge on unknown vertex");
  if (u == v) throw Error(Errc::BadParameters, "self-loop on " + names_[u]);
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return;
  nu.insert(it, v);
  auto& nv = adjacency_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++num_edges_;
}

void Graph::add_edge(const std::string& u, const std::string& v) {
  const Vertex a = add_vertex(u);
  const Vertex b = add_vertex(v);
  add_edge(a, b);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& nu = adjacency_.at(u);
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::size_t Graph::max_degree() const {
  std::size_t d = 0;
  for (const auto& a : adjacency_) d = std::max(d, a.size());
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex u = 0; u < num_vertices(); ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.push_back({u, v});
  return out;
}

std::optional<Vertex> Graph::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Vertex>(it - names_.begin());
}

Vertex Graph::id(const std::string& name) const {
  if (auto v = find(name)) return *v;
  throw Error(Errc::BadParameters, "unknown vertex '" + name + "'");
}

Graph Graph::without(Vertex x) const {
  Graph g;
  for (Vertex v = 0; v < num_vertices(); ++v)
    if (v != x) g.add_vertex(names_[v]);
  for (const auto& e : edges())
    if (e.u != x && e.v != x) g.add_edge(names_[e.u], names_[e.v]);
  return g;
}

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

int validate_decomposition(const Graph& g, const TreeDecomposition& d) {
  const std::size_t nb = d.bags.size();
  if (nb == 0) {
    if (g.num_vertices() != 0) throw Error(Errc::VertexNotCovered, g.name(0) + " lies in no bag");
    return -1;
  }
  // The bag graph must be a tree.
  if (d.tree_edges.size() != nb - 1) throw Error(Errc::NotATree, "a tree on " + std::to_string(nb) + " bags has " +
                                                                      std::to_string(nb - 1) + " edges");
  std::vector<std::size_t> parent(nb);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<std::size_t>> adj(nb);
  for (auto [a, b] : d.tree_edges) {
    if (a >= nb || b >= nb) throw Error(Errc::NotATree, "tree edge names a missing bag");
    const auto ra = find(a), rb = find(b);
    if (ra == rb) throw Error(Errc::NotATree, "tree edge " + std::to_string(a) + "-" + std::to_string(b) + " closes a cycle");
    parent[ra] = rb;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  std::vector<std::vector<std::size_t>> occurrences(g.num_vertices());
  for (std::size_t t = 0; t < nb; ++t)
    for (Vertex v : d.bags[t]) {
      if (v >= g.num_vertices()) throw Error(Errc::VertexNotCovered, "bag " + std::to_string(t) + " names a missing vertex");
      if (occurrences[v].empty() || occurrences[v].back() != t) occurrences[v].push_back(t);
    }

  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (occurrences[v].empty()) throw Error(Errc::VertexNotCovered, g.name(v) + " lies in no bag");

  for (const auto& e : g.edges()) {
    const auto& a = occurrences[e.u];
    const auto& b = occurrences[e.v];
    bool covered = false;
    for (std::size_t t : a)
      if (std::binary_search(b.begin(), b.end(), t)) covered = true;
    if (!covered) throw Error(Errc::EdgeNotCovered, "{" + g.name(e.u) + "," + g.name(e.v) + "}");
  }

  // Occurrence sets must induce connected subtrees.
  std::vector<char> holds(nb, 0), seen(nb, 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto& occ = occurrences[v];
    for (std::size_t t : occ) holds[t] = 1;
    std::vector<std::size_t> stack{occ.front()};
    seen[occ.front()] = 1;
    std::size_t visited = 0;
    while (!stack.empty()) {
      const auto t = stack.back();
      stack.pop_back();
      ++visited;
      for (auto s : adj[t])
        if (holds[s] && !seen[s]) {
          seen[s] = 1;
          stack.push_back(s);
        }
    }
    for (std::size_t t : occ) holds[t] = seen[t] = 0;
    if (visited != occ.size())
      throw Error(Errc::VertexOccurrenceDisconnected, "bags holding " + g.name(v) + " are not connected");
  }
  return d.width();
}

Graph path_graph(std::size_t n) {
  Graph g = named_vertices(n, "v");
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return g;
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw Error(Errc::BadParameters, "a cycle needs at least 3 vertices");
  Graph g = path_graph(n);
  g.add_edge(static_cast<Vertex>(n - 1), 0);
  return g;
}

Graph complete_graph(std::size_t n) {
  Graph g = named_vertices(n, "v");
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph disjoint_edges(std::size_t m) {
  Graph g;
  for (std::size_t i = 0; i < m; ++i) g.add_edge("a" + std::to_string(i), "b" + std::to_string(i));
  return g;
}

Graph grid_graph(std::size_t w, std::size_t h) {
  return grid_with_decomposition(w, h).graph;
}

GraphWithDecomposition path_with_decomposition(std::size_t n) {
  if (n == 0) throw Error(Errc::BadParameters, "empty path");
  GraphWithDecomposition out{path_graph(n), {}};
  if (n == 1) {
    out.decomposition.bags.push_back({0});
    return out;
  }
  for (Vertex i = 0; i + 1 < n; ++i) {
    out.decomposition.bags.push_back({i, i + 1});
    if (i > 0) out.decomposition.tree_edges.emplace_back(i - 1, i);
  }
  return out;
}

GraphWithDecomposition cycle_with_decomposition(std::size_t n) {
  GraphWithDecomposition out{cycle_graph(n), {}};
  // Every bag keeps v0, which closes the cycle.
  for (Vertex i = 1; i + 1 < n; ++i) {
    out.decomposition.bags.push_back({0, i, i + 1});
    if (i > 1) out.decomposition.tree_edges.emplace_back(i - 2, i - 1);
  }
  return out;
}

GraphWithDecomposition complete_with_decomposition(std::size_t n) {
  if (n == 0) throw Error(Errc::BadParameters, "empty graph");
  GraphWithDecomposition out{complete_graph(n), {}};
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0);
  out.decomposition.bags.push_back(std::move(all));
  return out;
}

GraphWithDecomposition disjoint_edges_with_decomposition(std::size_t m) {
  if (m == 0) throw Error(Errc::BadParameters, "no edges");
  GraphWithDecomposition out{disjoint_edges(m), {}};
  for (Vertex i = 0; i < m; ++i) {
    out.decomposition.bags.push_back({2 * i, 2 * i + 1});
    if (i > 0) out.decomposition.tree_edges.emplace_back(i - 1, i);
  }
  return out;
}

GraphWithDecomposition grid_with_decomposition(std::size_t w, std::size_t h) {
  if (w == 0 || h == 0) throw Error(Errc::BadParameters, "grid dimensions must be positive");
  const bool transpose = h > w;  // sweep along the longer side
  const std::size_t cols = transpose ? h : w;
  const std::size_t rows = transpose ? w : h;
  Graph g;
  // Vertex index c * rows + r along the sweep.
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t i = transpose ? r : c, j = transpose ? c : r;
      g.add_vertex("g" + std::to_string(i) + "_" + std::to_string(j));
    }
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) {
      const auto idx = static_cast<Vertex>(c * rows + r);
      if (r + 1 < rows) g.add_edge(idx, idx + 1);
      if (c + 1 < cols) g.add_edge(idx, static_cast<Vertex>(idx + rows));
    }
  GraphWithDecomposition out{std::move(g), {}};
  const std::size_t n = cols * rows;
  if (n <= rows + 1) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    out.decomposition.bags.push_back(std::move(all));
    return out;
  }
  // Sliding window of rows + 1 consecutive vertices.
  for (std::size_t t = 0; t + rows < n; ++t) {
    std::vector<Vertex> bag(rows + 1);
    std::iota(bag.begin(), bag.end(), static_cast<Vertex>(t));
    out.decomposition.bags.push_back(std::move(bag));
    if (t > 0) out.decomposition.tree_edges.emplace_back(t - 1, t);
  }
  return out;
}

GraphWithDecomposition random_partial_ktree(std::size_t n, std::size_t k, std::uint64_t seed, double keep) {
  if (k == 0 || k >= n) throw Error(Errc::BadParameters, "random_partial_ktree needs 0 < k < n");
  std::mt19937_64 rng(seed);
  GraphWithDecomposition out{named_vertices(n, "v"), {}};
  auto& d = out.decomposition;
  auto maybe_edge = [&](Vertex a, Vertex b) {
    if (unit(rng) < keep) out.graph.add_edge(a, b);
  };
  std::vector<Vertex> first(k + 1);
  std::iota(first.begin(), first.end(), 0);
  for (Vertex a = 0; a <= k; ++a)
    for (Vertex b = a + 1; b <= k; ++b) maybe_edge(a, b);
  d.bags.push_back(first);
  for (Vertex v = static_cast<Vertex>(k + 1); v < n; ++v) {
    const std::size_t host = below(rng, d.bags.size());
    std::vector<Vertex> clique = d.bags[host];
    clique.erase(clique.begin() + static_cast<std::ptrdiff_t>(below(rng, clique.size())));
    for (Vertex u : clique) maybe_edge(u, v);
    clique.push_back(v);
    d.bags.push_back(std::move(clique));
    d.tree_edges.emplace_back(host, d.bags.size() - 1);
  }
  return out;
}

Graph random_connected_graph(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) throw Error(Errc::BadParameters, "empty graph");
  std::mt19937_64 rng(seed);
  Graph g = named_vertices(n, "v");
  for (Vertex v = 1; v < n; ++v) g.add_edge(v, static_cast<Vertex>(below(rng, v)));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v) && unit(rng) < p) g.add_edge(u, v);
  return g;
}

Graph read_edge_list(std::istream& in) {
  Graph g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(strip_comment(line));
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() == 1) g.add_vertex(tok[0]);
    else if (tok.size() == 2) g.add_edge(tok[0], tok[1]);
    else throw Error(Errc::ParseError, "edge list line " + std::to_string(lineno) + ": expected '<u> <v>'");
  }
  return g;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) == 0) out << g.name(v) << '\n';
  for (const auto& e : g.edges()) out << g.name(e.u) << ' ' << g.name(e.v) << '\n';
}

void write_dot(std::ostream& out, const Graph& g) {
  out << "graph G {\n";
  for (Vertex v = 0; v < g.num_vertices(); ++v) out << "  \"" << g.name(v) << "\";\n";
  for (const auto& e : g.edges()) out << "  \"" << g.name(e.u) << "\" -- \"" << g.name(e.v) << "\";\n";
  out << "}\n";
}

TreeDecomposition read_decomposition(std::istream& in, const Graph& g) {
  TreeDecomposition d;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(strip_comment(line));
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "bag") {
      std::size_t idx;
      if (!(ls >> idx)) throw Error(Errc::ParseError, "decomposition line " + std::to_string(lineno) + ": bag index");
      if (d.bags.size() <= idx) d.bags.resize(idx + 1);
      for (std::string name; ls >> name;) d.bags[idx].push_back(g.id(name));
    } else if (kind == "edge") {
      std::size_t a, b;
      if (!(ls >> a >> b)) throw Error(Errc::ParseError, "decomposition line " + std::to_string(lineno) + ": edge");
      d.tree_edges.emplace_back(a, b);
    } else {
      throw Error(Errc::ParseError, "decomposition line " + std::to_string(lineno) + ": unknown record '" + kind + "'");
    }
  }
  return d;
}

void write_decomposition(std::ostream& out, const Graph& g, const TreeDecomposition& d) {
  out << "# width " << d.width() << '\n';
  for (std::size_t i = 0; i < d.bags.size(); ++i) {
    out << "bag " << i;
    for (Vertex v : d.bags[i]) out << ' ' << g.name(v);
    out << '\n';
  }
  for (auto [a, b] : d.tree_edges) out << "edge " << a << ' ' << b << '\n';
}

}  // namespace kc
