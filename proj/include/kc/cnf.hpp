#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kc/count.hpp"
#include "kc/variables.hpp"

namespace kc {

struct Literal {
  Var var = 0;
  bool positive = true;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct Clause {
  std::vector<Literal> literals;  ///< sorted by variable, one literal per variable
  std::string name;

  VarSet vars() const;
};

/// Set of clauses over a declared variable scope. Clause names are kept
/// stable so incidence-graph vertices and DIMACS comments are reproducible.
class CnfFormula {
 public:
  CnfFormula();
  CnfFormula(std::shared_ptr<const VariableRegistry> variables, VarSet scope);

  /// Sorts and deduplicates literals. Throws BadParameters for a clause
  /// containing x and ¬x, ScopeViolation for variables outside the scope.
  void add_clause(std::vector<Literal> literals, std::string name = {});

  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  const VarSet& scope() const noexcept { return scope_; }
  const VariableRegistry& variables() const noexcept { return *variables_; }
  const std::shared_ptr<const VariableRegistry>& registry() const noexcept { return variables_; }

  /// var(F).
  VarSet vars() const;
  std::optional<std::size_t> find_clause(std::string_view name) const;
  /// F \ {C} for the clause named `name`.
  CnfFormula without_clause(std::string_view name) const;

 private:
  std::shared_ptr<const VariableRegistry> variables_;
  VarSet scope_;
  std::vector<Clause> clauses_;
};

bool clause_satisfied(const Clause& c, const Assignment& tau);

/// tau must be total on f.scope().
bool cnf_evaluate(const CnfFormula& f, const Assignment& tau);

/// Exhaustive count over `scope` (default: f.scope()). ScopeTooLarge
/// beyond `limit` variables.
CountResult cnf_count_bruteforce(const CnfFormula& f, const VarSet& scope, std::size_t limit = 20);
CountResult cnf_count_bruteforce(const CnfFormula& f, std::size_t limit = 20);

/// F[tau]: satisfied clauses removed, falsified literals dropped (an
/// emptied clause stays as the empty clause); scope loses dom(tau).
CnfFormula condition(const CnfFormula& f, const Assignment& tau);

/// DIMACS with `c var <index> <name>` and `c clause <i> <name>` comments.
/// Variable index = id + 1.
void write_dimacs(std::ostream& out, const CnfFormula& f);
/// Reads standard DIMACS; names come from `c var` comments when present,
/// otherwise "x<index>". The scope is every declared variable.
CnfFormula read_dimacs(std::istream& in);

}  // namespace kc
