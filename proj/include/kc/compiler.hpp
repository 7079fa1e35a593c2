#pragma once

#include <string_view>
#include <variant>

#include "kc/circuit.hpp"
#include "kc/cnf.hpp"
#include "kc/structure.hpp"

namespace kc {

/// Branching-variable choice when no fixed order is given. MinDegree picks
/// the variable of least degree in the residual primal graph; ties and
/// LexFirst are resolved by variable name.
enum class Heuristic { MinDegree, LexFirst };
enum class Caching { Off, ResidualFormulaKey };

struct CompileConfig {
  std::variant<VariableOrder, Heuristic> mode = Heuristic::MinDegree;
  Caching caching = Caching::ResidualFormulaKey;
  bool component_split = true;
};

std::string_view to_string(Heuristic h) noexcept;

/// Trace of an exhaustive DPLL run (Shannon expansion plus optional
/// component splitting, no unit propagation) as a decDNNF over f.scope().
/// In fixed-order mode the result respects the order. Throws
/// ScopeViolation if a fixed order misses a variable of f.
Circuit compile(const CnfFormula& f, const CompileConfig& cfg = {});

}  // namespace kc
