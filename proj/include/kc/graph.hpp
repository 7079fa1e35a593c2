#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kc {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with named vertices (dense ids).
class Graph {
 public:
  Graph() = default;

  /// Returns the existing id if `name` is already present.
  Vertex add_vertex(const std::string& name);
  /// Throws BadParameters on self-loops or unknown vertices. Idempotent.
  void add_edge(Vertex u, Vertex v);
  void add_edge(const std::string& u, const std::string& v);

  std::size_t num_vertices() const noexcept { return names_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }
  bool has_edge(Vertex u, Vertex v) const;
  /// Sorted neighbour list.
  const std::vector<Vertex>& neighbours(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  std::size_t max_degree() const;
  /// Edges with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  const std::string& name(Vertex v) const { return names_.at(v); }
  std::optional<Vertex> find(const std::string& name) const;
  /// Throws BadParameters for unknown names.
  Vertex id(const std::string& name) const;

  /// G \ x: x and its incident edges removed; survivors keep their
  /// relative order (ids are compacted).
  Graph without(Vertex x) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t num_edges_ = 0;
};

/// Set of pairwise vertex-disjoint edges.
using Matching = std::vector<Edge>;

/// Tree of bags over the vertex ids of one graph.
struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<std::size_t, std::size_t>> tree_edges;

  /// max |bag| - 1; -1 for an empty decomposition.
  int width() const;
};

/// Returns the width if `d` is a tree decomposition of `g`: the bags form
/// a tree, every vertex and every edge lies in some bag, and each
/// vertex's bags are connected. Throws NotATree, VertexNotCovered,
/// EdgeNotCovered or VertexOccurrenceDisconnected with a witness.
int validate_decomposition(const Graph& g, const TreeDecomposition& d);

struct GraphWithDecomposition {
  Graph graph;
  TreeDecomposition decomposition;
};

// Generators. Vertex names are "v<i>" unless stated otherwise.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// m disjoint edges a<i>-b<i>.
Graph disjoint_edges(std::size_t m);
/// w x h grid, vertices "g<i>_<j>" (column i, row j).
Graph grid_graph(std::size_t w, std::size_t h);

GraphWithDecomposition path_with_decomposition(std::size_t n);
GraphWithDecomposition cycle_with_decomposition(std::size_t n);
GraphWithDecomposition complete_with_decomposition(std::size_t n);
GraphWithDecomposition disjoint_edges_with_decomposition(std::size_t m);
/// Path decomposition of width min(w, h).
GraphWithDecomposition grid_with_decomposition(std::size_t w, std::size_t h);

/// Random subgraph of a random k-tree on n vertices; each k-tree edge is
/// kept with probability `keep`. The witness has width ≤ k.
/// Throws BadParameters unless 0 < k < n.
GraphWithDecomposition random_partial_ktree(std::size_t n, std::size_t k, std::uint64_t seed,
                                            double keep = 0.7);

/// Random connected graph: random spanning tree plus each remaining pair
/// with probability p.
Graph random_connected_graph(std::size_t n, double p, std::uint64_t seed);

// Text formats.
/// One edge "<u> <v>" per line; a single name declares an isolated
/// vertex; '#' starts a comment.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
void write_dot(std::ostream& out, const Graph& g);

/// "bag <i> <names...>" and "edge <i> <j>" lines; names resolved in g.
TreeDecomposition read_decomposition(std::istream& in, const Graph& g);
void write_decomposition(std::ostream& out, const Graph& g, const TreeDecomposition& d);

}  // namespace kc
