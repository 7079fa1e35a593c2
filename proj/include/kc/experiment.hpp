#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kc/compiler.hpp"
#include "kc/graph.hpp"

namespace kc {

enum class OrderKind { Natural, Separated, Random };
enum class ModeKind { Fixed, MinDegree, LexFirst };

/// Experiment description. Accepted as JSON or as `key = value` lines
/// with comma-separated lists:
///   family    cycle | path | grid | complete | disjoint_edges | random_partial_ktree
///   sizes     instance sizes (vertices; columns for grid; edges for disjoint_edges)
///   k         width parameter (grid rows, k-tree width)
///   seeds     generator and random-order seeds
///   orders    natural | separated | random
///   modes     fixed | min_degree | lex_first
///   caching   on | off
///   min_obdd  true | false (only evaluated up to 8 variables)
///   obdd_limit  variable cap for the reduced OBDD column (≤ 24)
///   keep      edge retention probability for random_partial_ktree
struct ExperimentConfig {
  std::string family = "cycle";
  std::vector<std::size_t> sizes{3, 4, 5};
  std::size_t k = 2;
  std::vector<std::uint64_t> seeds{1};
  std::vector<OrderKind> orders{OrderKind::Natural};
  std::vector<ModeKind> modes{ModeKind::Fixed};
  bool caching = true;
  bool min_obdd = false;
  std::size_t obdd_limit = 16;
  double keep = 0.7;
  /// Worker threads across (size, seed) instances; 0 means one per core.
  std::size_t threads = 0;
};

/// Throws ConfigError.
ExperimentConfig parse_experiment_config(std::string_view text);

struct ExperimentRow {
  std::string instance;
  std::string family;
  std::size_t n = 0;         ///< |V|
  std::size_t num_vars = 0;  ///< |V¹ ∪ V²|
  int width = 0;             ///< width of the generator's decomposition witness
  std::string order;
  std::uint64_t seed = 0;
  std::string mode;
  std::size_t compiled_size = 0;
  std::optional<std::size_t> reduced_obdd_size;
  std::optional<std::size_t> min_obdd_size;
  std::optional<std::size_t> split_matching;
  std::optional<std::uint64_t> bound;
  std::optional<bool> bound_holds;
  bool full_decision_path = false;  ///< full decision path in the compiled F_G
  double wall_ms = 0;
};

inline constexpr std::string_view kExperimentCsvHeader =
    "instance,family,n,num_vars,width,order,seed,mode,compiled_size,reduced_obdd_size,min_obdd_size,"
    "split_matching,bound,bound_holds,full_decision_path,wall_ms";

/// Order over V¹ ∪ V² (ids of build_f2_g): natural interleaves the two
/// copies of each vertex, separated puts every first copy first, random is
/// a seeded shuffle.
VariableOrder experiment_order(OrderKind kind, std::size_t n, std::uint64_t seed);

/// The instance graph for (family, size, k, seed) and its witness.
GraphWithDecomposition experiment_instance(const ExperimentConfig& cfg, std::size_t size, std::uint64_t seed);

/// One row per (size, seed, order, mode). Deterministic except wall_ms.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg);

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

std::string_view to_string(OrderKind k) noexcept;
std::string_view to_string(ModeKind k) noexcept;

}  // namespace kc
