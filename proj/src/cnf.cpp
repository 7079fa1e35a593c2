#include "kc/cnf.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "kc/error.hpp"

namespace kc {

VarSet Clause::vars() const {
  VarSet s;
  for (const auto& l : literals) s.insert(l.var);
  return s;
}

CnfFormula::CnfFormula() : variables_(std::make_shared<VariableRegistry>()) {}

CnfFormula::CnfFormula(std::shared_ptr<const VariableRegistry> variables, VarSet scope)
    : variables_(variables ? std::move(variables) : std::make_shared<VariableRegistry>()),
      scope_(std::move(scope)) {}

void CnfFormula::add_clause(std::vector<Literal> literals, std::string name) {
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (!scope_.contains(literals[i].var))
      throw Error(Errc::ScopeViolation, "literal on " + variables_->name(literals[i].var) + " outside scope");
    if (i > 0 && literals[i].var == literals[i - 1].var)
      throw Error(Errc::BadParameters, "clause contains both polarities of " + variables_->name(literals[i].var));
  }
  if (name.empty()) name = "c" + std::to_string(clauses_.size());
  clauses_.push_back({std::move(literals), std::move(name)});
}

VarSet CnfFormula::vars() const {
  VarSet s;
  for (const auto& c : clauses_) s |= c.vars();
  return s;
}

std::optional<std::size_t> CnfFormula::find_clause(std::string_view name) const {
  for (std::size_t i = 0; i < clauses_.size(); ++i)
    if (clauses_[i].name == name) return i;
  return std::nullopt;
}

CnfFormula CnfFormula::without_clause(std::string_view name) const {
  CnfFormula out(variables_, scope_);
  for (const auto& c : clauses_)
    if (c.name != name) out.clauses_.push_back(c);
  return out;
}

bool clause_satisfied(const Clause& c, const Assignment& tau) {
  return std::any_of(c.literals.begin(), c.literals.end(),
                     [&](const Literal& l) { return tau.value(l.var) == l.positive; });
}

bool cnf_evaluate(const CnfFormula& f, const Assignment& tau) {
  f.scope().for_each([&](Var v) {
    if (!tau.contains(v)) throw Error(Errc::IncompleteAssignment, "no value for " + f.variables().name(v));
  });
  return std::all_of(f.clauses().begin(), f.clauses().end(),
                     [&](const Clause& c) { return clause_satisfied(c, tau); });
}

CountResult cnf_count_bruteforce(const CnfFormula& f, const VarSet& scope, std::size_t limit) {
  if (scope.size() > limit)
    throw Error(Errc::ScopeTooLarge, std::to_string(scope.size()) + " variables exceed the limit of " +
                                         std::to_string(limit));
  if (!f.scope().is_subset_of(scope))
    throw Error(Errc::ScopeViolation, "count scope must contain the formula scope");
  const auto vars = scope.to_vector();
  BigInt count = 0;
  for_each_assignment(vars, [&](const Assignment& tau) {
    if (std::all_of(f.clauses().begin(), f.clauses().end(),
                    [&](const Clause& c) { return clause_satisfied(c, tau); }))
      ++count;
  });
  return {count, scope};
}

CountResult cnf_count_bruteforce(const CnfFormula& f, std::size_t limit) {
  return cnf_count_bruteforce(f, f.scope(), limit);
}

CnfFormula condition(const CnfFormula& f, const Assignment& tau) {
  const VarSet dom = tau.domain();
  CnfFormula out(f.registry(), f.scope() - dom);
  for (const auto& c : f.clauses()) {
    std::vector<Literal> rest;
    bool satisfied = false;
    for (const auto& l : c.literals) {
      if (auto b = tau.get(l.var)) {
        if (*b == l.positive) satisfied = true;
      } else {
        rest.push_back(l);
      }
    }
    if (!satisfied) out.add_clause(std::move(rest), c.name);
  }
  return out;
}

void write_dimacs(std::ostream& out, const CnfFormula& f) {
  const auto& names = f.variables();
  std::size_t max_index = 0;
  f.scope().for_each([&](Var v) { max_index = std::max<std::size_t>(max_index, v + 1); });
  out << "c kc cnf\n";
  f.scope().for_each([&](Var v) { out << "c var " << v + 1 << ' ' << names.name(v) << '\n'; });
  for (std::size_t i = 0; i < f.clauses().size(); ++i) out << "c clause " << i << ' ' << f.clauses()[i].name << '\n';
  out << "p cnf " << max_index << ' ' << f.clauses().size() << '\n';
  for (const auto& c : f.clauses()) {
    for (const auto& l : c.literals) out << (l.positive ? "" : "-") << l.var + 1 << ' ';
    out << "0\n";
  }
}

CnfFormula read_dimacs(std::istream& in) {
  auto names = std::make_shared<VariableRegistry>();
  std::vector<std::pair<std::size_t, std::string>> declared;
  std::vector<std::string> clause_names;
  std::vector<std::vector<Literal>> clauses;
  std::vector<Literal> current;
  long num_vars = -1, num_clauses = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "c") {
      std::string kind;
      if (!(ls >> kind)) continue;
      if (kind == "var") {
        std::size_t idx;
        std::string name;
        if (ls >> idx >> name) declared.emplace_back(idx, name);
      } else if (kind == "clause") {
        std::size_t idx;
        std::string name;
        if (ls >> idx >> name) {
          if (clause_names.size() <= idx) clause_names.resize(idx + 1);
          clause_names[idx] = name;
        }
      }
      continue;
    }
    if (head == "p") {
      std::string fmt;
      if (!(ls >> fmt >> num_vars >> num_clauses) || fmt != "cnf" || num_vars < 0 || num_clauses < 0)
        throw Error(Errc::ParseError, "bad DIMACS header on line " + std::to_string(lineno));
      continue;
    }
    if (num_vars < 0) throw Error(Errc::ParseError, "clause before 'p cnf' header on line " + std::to_string(lineno));
    ls.clear();
    ls.str(line);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const long idx = lit < 0 ? -lit : lit;
      if (idx > num_vars)
        throw Error(Errc::ParseError, "literal " + std::to_string(lit) + " exceeds declared variable count");
      current.push_back({static_cast<Var>(idx - 1), lit > 0});
    }
    if (!ls.eof()) throw Error(Errc::ParseError, "bad token on line " + std::to_string(lineno));
  }
  if (num_vars < 0) throw Error(Errc::ParseError, "missing 'p cnf' header");
  if (!current.empty()) clauses.push_back(std::move(current));
  if (static_cast<long>(clauses.size()) != num_clauses)
    throw Error(Errc::ParseError, "header announces " + std::to_string(num_clauses) + " clauses, found " +
                                      std::to_string(clauses.size()));
  for (const auto& [idx, name] : declared) {
    if (idx == 0 || static_cast<long>(idx) > num_vars) throw Error(Errc::ParseError, "bad 'c var' index");
    names->add(name, static_cast<Var>(idx - 1));
  }
  VarSet scope;
  for (Var v = 0; v < static_cast<Var>(num_vars); ++v) {
    if (!names->contains(v)) names->add("x" + std::to_string(v + 1), v);
    scope.insert(v);
  }
  CnfFormula f(names, scope);
  for (std::size_t i = 0; i < clauses.size(); ++i)
    f.add_clause(std::move(clauses[i]), i < clause_names.size() ? clause_names[i] : std::string{});
  return f;
}

}  // namespace kc
