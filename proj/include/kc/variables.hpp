#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kc {

using Var = std::uint32_t;

/// Dense bitset over variable ids. Value type; equality ignores capacity.
class VarSet {
 public:
  VarSet() = default;
  VarSet(std::initializer_list<Var> vars);
  explicit VarSet(std::span<const Var> vars);

  void insert(Var v);
  void erase(Var v);
  bool contains(Var v) const noexcept;

  std::size_t size() const noexcept;
  bool empty() const noexcept;

  bool is_subset_of(const VarSet& other) const noexcept;
  bool intersects(const VarSet& other) const noexcept;
  std::optional<Var> first_common(const VarSet& other) const noexcept;
  std::optional<Var> first() const noexcept;

  VarSet& operator|=(const VarSet& other);
  VarSet& operator&=(const VarSet& other);
  VarSet& operator-=(const VarSet& other);

  friend VarSet operator|(VarSet a, const VarSet& b) { return a |= b; }
  friend VarSet operator&(VarSet a, const VarSet& b) { return a &= b; }
  friend VarSet operator-(VarSet a, const VarSet& b) { return a -= b; }
  friend bool operator==(const VarSet& a, const VarSet& b) noexcept;

  /// Members in increasing id order.
  std::vector<Var> to_vector() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        f(static_cast<Var>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

 private:
  void trim();
  std::vector<std::uint64_t> words_;
};

/// Name <-> id bijection. Ids may be sparse (e.g. after reading a
/// circuit whose scope was reduced by conditioning).
class VariableRegistry {
 public:
  /// Registers `name` under the next free id, or returns its existing id.
  Var add(std::string_view name);
  /// Registers `name` under an explicit id. Throws ParseError on clashes.
  Var add(std::string_view name, Var id);

  std::optional<Var> find(std::string_view name) const;
  /// Throws ScopeViolation for an unknown name.
  Var id(std::string_view name) const;
  bool contains(Var id) const noexcept;
  /// Name of `id`; "#<id>" for unregistered ids.
  std::string name(Var id) const;

  /// One past the largest registered id.
  std::size_t capacity() const noexcept { return names_.size(); }
  std::size_t size() const noexcept { return index_.size(); }
  VarSet all() const;

 private:
  std::vector<std::string> names_;
  std::vector<bool> used_;
  std::unordered_map<std::string, Var> index_;
};

/// Partial truth assignment: a map from a finite variable set to {0,1}.
class Assignment {
 public:
  Assignment() = default;

  void set(Var v, bool value);
  void unset(Var v);
  bool contains(Var v) const noexcept {
    return v < values_.size() && values_[v] >= 0;
  }
  /// Throws IncompleteAssignment if `v` is unassigned.
  bool value(Var v) const;
  std::optional<bool> get(Var v) const noexcept;

  VarSet domain() const;
  std::size_t size() const noexcept;

  /// tau ~ tau': both agree on their common domain.
  bool compatible_with(const Assignment& other) const noexcept;
  /// tau ∪ tau'. Throws PreconditionViolated if not compatible.
  Assignment merged(const Assignment& other) const;
  Assignment restricted(const VarSet& vars) const;

  /// Assignment on `vars` where vars[i] takes bit i of `bits`.
  static Assignment from_bits(std::span<const Var> vars, std::uint64_t bits);

  friend bool operator==(const Assignment& a, const Assignment& b) noexcept;

 private:
  std::vector<std::int8_t> values_;
};

/// Calls f(const Assignment&) for each of the 2^|vars| assignments, in
/// binary counting order with vars[0] as the least significant bit.
template <class F>
void for_each_assignment(std::span<const Var> vars, F&& f) {
  const std::uint64_t total = std::uint64_t{1} << vars.size();
  Assignment tau;
  for (Var v : vars) tau.set(v, false);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (std::size_t i = 0; i < vars.size(); ++i) tau.set(vars[i], (bits >> i) & 1U);
    f(static_cast<const Assignment&>(tau));
  }
}

/// "x=1,y=0" rendering using registry names, in id order.
std::string format_assignment(const Assignment& tau, const VariableRegistry& names);

}  // namespace kc
