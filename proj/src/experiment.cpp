#include "kc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "kc/error.hpp"
#include "kc/instances.hpp"
#include "kc/obdd.hpp"
#include "kc/split_matching.hpp"
#include "kc/structure.hpp"

namespace kc {
namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

OrderKind parse_order(const std::string& s) {
  if (s == "natural") return OrderKind::Natural;
  if (s == "separated") return OrderKind::Separated;
  if (s == "random") return OrderKind::Random;
  throw Error(Errc::ConfigError, "unknown order '" + s + "'");
}

ModeKind parse_mode(const std::string& s) {
  if (s == "fixed") return ModeKind::Fixed;
  if (s == "min_degree") return ModeKind::MinDegree;
  if (s == "lex_first") return ModeKind::LexFirst;
  throw Error(Errc::ConfigError, "unknown mode '" + s + "'");
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "on" || s == "1") return true;
  if (s == "false" || s == "off" || s == "0") return false;
  throw Error(Errc::ConfigError, "expected a boolean, got '" + s + "'");
}

std::uint64_t parse_uint(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s.front() == '-') throw Error(Errc::ConfigError, "expected a number, got '" + s + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

// Both front ends reduce to (key, list-of-strings) pairs.
void apply(ExperimentConfig& cfg, const std::string& key, const std::vector<std::string>& values) {
  auto single = [&]() -> const std::string& {
    if (values.size() != 1) throw Error(Errc::ConfigError, "key '" + key + "' takes one value");
    return values.front();
  };
  auto require_nonempty = [&] {
    if (values.empty()) throw Error(Errc::ConfigError, "key '" + key + "' needs at least one value");
  };
  if (key == "family") {
    cfg.family = single();
    if (cfg.family == "ktree") cfg.family = "random_partial_ktree";  // the CLI generator's name
  } else if (key == "sizes") {
    require_nonempty();
    cfg.sizes.clear();
    for (const auto& v : values) cfg.sizes.push_back(parse_uint(v));
  } else if (key == "k") {
    cfg.k = parse_uint(single());
  } else if (key == "seeds") {
    require_nonempty();
    cfg.seeds.clear();
    for (const auto& v : values) cfg.seeds.push_back(parse_uint(v));
  } else if (key == "orders") {
    require_nonempty();
    cfg.orders.clear();
    for (const auto& v : values) cfg.orders.push_back(parse_order(v));
  } else if (key == "modes") {
    require_nonempty();
    cfg.modes.clear();
    for (const auto& v : values) cfg.modes.push_back(parse_mode(v));
  } else if (key == "caching") {
    cfg.caching = parse_bool(single());
  } else if (key == "min_obdd") {
    cfg.min_obdd = parse_bool(single());
  } else if (key == "obdd_limit") {
    cfg.obdd_limit = parse_uint(single());
    if (cfg.obdd_limit > 24) throw Error(Errc::ConfigError, "obdd_limit is capped at 24");
  } else if (key == "threads") {
    cfg.threads = parse_uint(single());
  } else if (key == "keep") {
    try {
      cfg.keep = std::stod(single());
    } catch (const std::exception&) {
      throw Error(Errc::ConfigError, "keep must be a number");
    }
    if (!(cfg.keep >= 0 && cfg.keep <= 1)) throw Error(Errc::ConfigError, "keep must lie in [0,1]");
  } else {
    throw Error(Errc::ConfigError, "unknown key '" + key + "'");
  }
}

std::vector<std::string> json_values(const std::string& key, const json& v) {
  auto scalar = [&](const json& x) -> std::string {
    if (x.is_string()) return x.get<std::string>();
    if (x.is_boolean()) return x.get<bool>() ? "true" : "false";
    if (x.is_number_unsigned() || x.is_number_integer()) return x.dump();
    if (x.is_number_float()) return x.dump();
    throw Error(Errc::ConfigError, "unsupported value for '" + key + "'");
  };
  std::vector<std::string> out;
  if (v.is_array())
    for (const auto& x : v) out.push_back(scalar(x));
  else
    out.push_back(scalar(v));
  return out;
}

Graph make_family(const ExperimentConfig& cfg, std::size_t size, std::uint64_t seed, TreeDecomposition& d) {
  GraphWithDecomposition gd;
  if (cfg.family == "cycle") gd = cycle_with_decomposition(size);
  else if (cfg.family == "path") gd = path_with_decomposition(size);
  else if (cfg.family == "grid") gd = grid_with_decomposition(size, cfg.k);
  else if (cfg.family == "complete") gd = complete_with_decomposition(size);
  else if (cfg.family == "disjoint_edges") gd = disjoint_edges_with_decomposition(size);
  else if (cfg.family == "random_partial_ktree") gd = random_partial_ktree(size, cfg.k, seed, cfg.keep);
  else throw Error(Errc::ConfigError, "unknown family '" + cfg.family + "'");
  d = std::move(gd.decomposition);
  return std::move(gd.graph);
}

CompileConfig compile_config(ModeKind mode, const VariableOrder& order, bool caching) {
  CompileConfig c;
  c.caching = caching ? Caching::ResidualFormulaKey : Caching::Off;
  switch (mode) {
    case ModeKind::Fixed: c.mode = order; break;
    case ModeKind::MinDegree: c.mode = Heuristic::MinDegree; break;
    case ModeKind::LexFirst: c.mode = Heuristic::LexFirst; break;
  }
  return c;
}

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_same_v<T, bool>) return *v ? "true" : "false";
  else return std::to_string(*v);
}

}  // namespace

std::string_view to_string(OrderKind k) noexcept {
  switch (k) {
    case OrderKind::Natural: return "natural";
    case OrderKind::Separated: return "separated";
    case OrderKind::Random: return "random";
  }
  return "?";
}

std::string_view to_string(ModeKind k) noexcept {
  switch (k) {
    case ModeKind::Fixed: return "fixed";
    case ModeKind::MinDegree: return "min_degree";
    case ModeKind::LexFirst: return "lex_first";
  }
  return "?";
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig cfg;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    json j;
    try {
      j = json::parse(body);
    } catch (const json::exception& e) {
      throw Error(Errc::ConfigError, std::string("invalid JSON: ") + e.what());
    }
    for (const auto& [key, value] : j.items()) apply(cfg, key, json_values(key, value));
    return cfg;
  }
  std::stringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::ConfigError, "line " + std::to_string(lineno) + ": expected key = value");
    apply(cfg, trim(line.substr(0, eq)), split_list(line.substr(eq + 1)));
  }
  return cfg;
}

VariableOrder experiment_order(OrderKind kind, std::size_t n, std::uint64_t seed) {
  std::vector<Var> seq;
  const auto m = static_cast<Var>(n);
  switch (kind) {
    case OrderKind::Natural:
      for (Var v = 0; v < m; ++v) {
        seq.push_back(v);
        seq.push_back(m + v);
      }
      break;
    case OrderKind::Separated:
      seq.resize(2 * n);
      std::iota(seq.begin(), seq.end(), Var{0});
      break;
    case OrderKind::Random: {
      seq.resize(2 * n);
      std::iota(seq.begin(), seq.end(), Var{0});
      std::mt19937_64 rng(seed);
      // Fisher-Yates on raw engine output, so the shuffle is the same on
      // every standard library.
      for (std::size_t i = seq.size(); i > 1; --i) std::swap(seq[i - 1], seq[rng() % i]);
      break;
    }
  }
  return VariableOrder(std::move(seq));
}

GraphWithDecomposition experiment_instance(const ExperimentConfig& cfg, std::size_t size, std::uint64_t seed) {
  GraphWithDecomposition out;
  out.graph = make_family(cfg, size, seed, out.decomposition);
  return out;
}

namespace {

// Rows for one (size, seed) instance, in order-major then mode-major order.
std::vector<ExperimentRow> run_instance(const ExperimentConfig& cfg, std::size_t size_param, std::size_t si) {
  using Clock = std::chrono::steady_clock;
  const bool seeded_family = cfg.family == "random_partial_ktree";
  std::vector<ExperimentRow> rows;
  {
    {
      const std::uint64_t seed = cfg.seeds[si];
      const auto gd = experiment_instance(cfg, size_param, seed);
      const Graph& g = gd.graph;
      const int width = validate_decomposition(g, gd.decomposition);
      const std::size_t n = g.num_vertices();
      const CnfFormula f2 = build_f2_g(g);
      const CnfFormula fg = build_f_g(g);
      std::ostringstream id;
      id << cfg.family << "_" << size_param;
      if (cfg.family == "grid" || seeded_family) id << "_k" << cfg.k;
      if (seeded_family) id << "_s" << seed;

      std::optional<std::size_t> min_size;
      if (cfg.min_obdd && f2.scope().size() <= kMinObddLimit) min_size = min_obdd_size(f2).size;

      for (OrderKind ok : cfg.orders) {
        // Deterministic orders need only one seed unless the instance itself is seeded.
        if (ok != OrderKind::Random && !seeded_family && si > 0) continue;
        const VariableOrder order = experiment_order(ok, n, seed);
        std::optional<std::size_t> reduced;
        if (f2.scope().size() <= cfg.obdd_limit) reduced = size(reduced_obdd(f2, order, cfg.obdd_limit));
        std::optional<SplitWitness> witness;
        if (n <= kSplitMatchingLimit) witness = best_split_matching(g, f2.variables(), order);

        // Vertex order for F_G: the first-copy order ≺.
        std::vector<Var> vertex_seq;
        for (Vertex v : first_copy_order(g, f2.variables(), order)) vertex_seq.push_back(v);
        const VariableOrder vertex_order(std::move(vertex_seq));

        for (ModeKind mode : cfg.modes) {
          const auto start = Clock::now();
          ExperimentRow row;
          row.instance = id.str();
          row.family = cfg.family;
          row.n = n;
          row.num_vars = f2.scope().size();
          row.width = width;
          row.order = std::string(to_string(ok));
          row.seed = seed;
          row.mode = std::string(to_string(mode));
          row.compiled_size = size(compile(f2, compile_config(mode, order, cfg.caching)));
          row.reduced_obdd_size = reduced;
          row.min_obdd_size = min_size;
          if (witness) {
            row.split_matching = witness->size();
            row.bound = witness->bound;
            if (reduced) row.bound_holds = *reduced >= witness->bound;
          }
          const Circuit zfg = compile(fg, compile_config(mode, vertex_order, cfg.caching));
          row.full_decision_path = has_decision_path(zfg, fg.scope()).has_value();
          row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t size_param : cfg.sizes)
    for (std::size_t si = 0; si < cfg.seeds.size(); ++si) tasks.emplace_back(size_param, si);

  std::size_t workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, tasks.size());
  std::vector<std::vector<ExperimentRow>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        results[t] = run_instance(cfg, tasks[t].first, tasks[t].second);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  // Rows come back in task order, so the output does not depend on scheduling.
  std::vector<ExperimentRow> rows;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (errors[t]) std::rethrow_exception(errors[t]);
    for (auto& r : results[t]) rows.push_back(std::move(r));
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << kExperimentCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.instance << ',' << r.family << ',' << r.n << ',' << r.num_vars << ',' << r.width << ',' << r.order << ','
        << r.seed << ',' << r.mode << ',' << r.compiled_size << ',' << cell(r.reduced_obdd_size) << ','
        << cell(r.min_obdd_size) << ',' << cell(r.split_matching) << ',' << cell(r.bound) << ','
        << cell(r.bound_holds) << ',' << (r.full_decision_path ? "true" : "false") << ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
    out << buf << '\n';
  }
}

}  // namespace kc
