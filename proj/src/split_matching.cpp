#include "kc/split_matching.hpp"

#include <algorithm>

#include "kc/error.hpp"
#include "kc/instances.hpp"
#include "kc/obdd.hpp"

namespace kc {
namespace {

void check_limit(const Graph& g, std::size_t limit) {
  if (g.num_vertices() > limit)
    throw Error(Errc::ScopeTooLarge, std::to_string(g.num_vertices()) + " vertices exceed the limit of " +
                                         std::to_string(limit));
}

class InducedSearch {
 public:
  InducedSearch(const Graph& g, const std::vector<Edge>& candidates) : g_(g), cand_(candidates) {
    blocked_.assign(g.num_vertices(), 0);
  }

  Matching run() {
    recurse(0);
    return best_;
  }

 private:
  // A vertex is blocked once it or a neighbour is an endpoint of the
  // current matching; an edge fits iff both endpoints are unblocked.
  void recurse(std::size_t i) {
    if (current_.size() + (cand_.size() - i) <= best_.size()) return;
    if (i == cand_.size()) {
      best_ = current_;
      return;
    }
    const Edge& e = cand_[i];
    if (!blocked_[e.u] && !blocked_[e.v]) {
      std::vector<Vertex> touched{e.u, e.v};
      for (Vertex x : {e.u, e.v})
        for (Vertex y : g_.neighbours(x)) touched.push_back(y);
      for (Vertex t : touched) ++blocked_[t];
      current_.push_back(e);
      recurse(i + 1);
      current_.pop_back();
      for (Vertex t : touched) --blocked_[t];
    }
    recurse(i + 1);
  }

  const Graph& g_;
  const std::vector<Edge>& cand_;
  std::vector<int> blocked_;
  Matching current_, best_;
};

}  // namespace

Matching max_induced_matching(const Graph& g, const std::vector<Edge>& candidates) {
  return InducedSearch(g, candidates).run();
}

std::uint64_t split_bound(std::size_t m) { return m <= 2 ? 1 : std::uint64_t{1} << (m - 2); }

SplitWitness best_split_matching(const Graph& g, const VariableRegistry& names, const VariableOrder& o,
                                 std::size_t limit) {
  check_limit(g, limit);
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> pos[2];
  for (int c = 0; c < 2; ++c) {
    pos[c].resize(n);
    for (Vertex v = 0; v < n; ++v)
      pos[c][v] = o.position(c == 0 ? first_copy(names, g, v) : second_copy(names, g, v));
  }

  SplitWitness best;
  best.pivot = o.sequence().empty() ? 0 : o.sequence().front();
  const auto edges = g.edges();
  for (std::size_t p = 0; p < o.size(); ++p) {
    for (int c = 0; c < 2; ++c) {
      const auto& near = pos[c];
      const auto& far = pos[1 - c];
      std::vector<Edge> cand;
      for (const auto& e : edges) {
        // Orientation v = e.u first; the reversed one is used if only it fits.
        if (near[e.u] <= p && far[e.v] > p) cand.push_back({e.u, e.v});
        else if (near[e.v] <= p && far[e.u] > p) cand.push_back({e.v, e.u});
      }
      if (cand.size() <= best.size()) continue;
      const Matching m = max_induced_matching(g, cand);
      if (m.size() > best.size()) {
        best.pivot = o.sequence()[p];
        best.colour = c + 1;
        best.pairs.clear();
        for (const auto& e : m) best.pairs.push_back({e.u, e.v});
      }
    }
  }
  best.bound = split_bound(best.size());
  return best;
}

SplitBoundReport split_bound_check(const Graph& g, const VariableOrder& o) {
  const CnfFormula f = build_f2_g(g);
  SplitBoundReport report;
  report.witness = best_split_matching(g, f.variables(), o);
  report.reduced_size = size(reduced_obdd(f, o));
  return report;
}

std::vector<Vertex> first_copy_order(const Graph& g, const VariableRegistry& names, const VariableOrder& o) {
  std::vector<Vertex> vs(g.num_vertices());
  std::vector<std::size_t> key(g.num_vertices());
  for (Vertex v = 0; v < vs.size(); ++v) {
    vs[v] = v;
    key[v] = std::min(o.position(first_copy(names, g, v)), o.position(second_copy(names, g, v)));
  }
  std::sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) { return key[a] < key[b]; });
  return vs;
}

Matching straddling_induced_matching(const Graph& g, const VariableRegistry& names, const VariableOrder& o,
                                     std::size_t limit) {
  check_limit(g, limit);
  const auto seq = first_copy_order(g, names, o);
  std::vector<std::size_t> rank(g.num_vertices());
  for (std::size_t i = 0; i < seq.size(); ++i) rank[seq[i]] = i;
  Matching best;
  const auto edges = g.edges();
  for (std::size_t p = 0; p < seq.size(); ++p) {
    std::vector<Edge> cand;
    for (const auto& e : edges) {
      const auto lo = std::min(rank[e.u], rank[e.v]), hi = std::max(rank[e.u], rank[e.v]);
      if (lo <= p && p < hi) cand.push_back(e);
    }
    if (cand.size() <= best.size()) continue;
    Matching m = max_induced_matching(g, cand);
    if (m.size() > best.size()) best = std::move(m);
  }
  return best;
}

}  // namespace kc
