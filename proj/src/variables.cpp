#include "kc/variables.hpp"

#include <algorithm>
#include <bit>

#include "kc/error.hpp"

namespace kc {

VarSet::VarSet(std::initializer_list<Var> vars) {
  for (Var v : vars) insert(v);
}

VarSet::VarSet(std::span<const Var> vars) {
  for (Var v : vars) insert(v);
}

void VarSet::insert(Var v) {
  const std::size_t w = v / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= std::uint64_t{1} << (v % 64);
}

void VarSet::erase(Var v) {
  const std::size_t w = v / 64;
  if (w >= words_.size()) return;
  words_[w] &= ~(std::uint64_t{1} << (v % 64));
  trim();
}

bool VarSet::contains(Var v) const noexcept {
  const std::size_t w = v / 64;
  return w < words_.size() && ((words_[w] >> (v % 64)) & 1U);
}

std::size_t VarSet::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool VarSet::empty() const noexcept { return words_.empty(); }

bool VarSet::is_subset_of(const VarSet& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::uint64_t o = w < other.words_.size() ? other.words_[w] : 0;
    if ((words_[w] & ~o) != 0) return false;
  }
  return true;
}

bool VarSet::intersects(const VarSet& other) const noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w)
    if ((words_[w] & other.words_[w]) != 0) return true;
  return false;
}

std::optional<Var> VarSet::first_common(const VarSet& other) const noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w) {
    const std::uint64_t both = words_[w] & other.words_[w];
    if (both != 0) return static_cast<Var>(w * 64 + std::countr_zero(both));
  }
  return std::nullopt;
}

std::optional<Var> VarSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] != 0) return static_cast<Var>(w * 64 + std::countr_zero(words_[w]));
  return std::nullopt;
}

VarSet& VarSet::operator|=(const VarSet& other) {
  if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

VarSet& VarSet::operator&=(const VarSet& other) {
  if (words_.size() > other.words_.size()) words_.resize(other.words_.size());
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  trim();
  return *this;
}

VarSet& VarSet::operator-=(const VarSet& other) {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w) words_[w] &= ~other.words_[w];
  trim();
  return *this;
}

bool operator==(const VarSet& a, const VarSet& b) noexcept { return a.words_ == b.words_; }

std::vector<Var> VarSet::to_vector() const {
  std::vector<Var> out;
  out.reserve(size());
  for_each([&](Var v) { out.push_back(v); });
  return out;
}

void VarSet::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

Var VariableRegistry::add(std::string_view name) {
  if (auto found = find(name)) return *found;
  return add(name, static_cast<Var>(names_.size()));
}

Var VariableRegistry::add(std::string_view name, Var id) {
  if (name.empty()) throw Error(Errc::ParseError, "empty variable name");
  if (auto found = find(name)) {
    if (*found == id) return id;
    throw Error(Errc::ParseError, "variable '" + std::string(name) + "' declared twice");
  }
  if (contains(id))
    throw Error(Errc::ParseError, "variable id " + std::to_string(id) + " declared twice");
  if (id >= names_.size()) {
    names_.resize(id + 1);
    used_.resize(id + 1, false);
  }
  names_[id] = std::string(name);
  used_[id] = true;
  index_.emplace(std::string(name), id);
  return id;
}

std::optional<Var> VariableRegistry::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Var VariableRegistry::id(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw Error(Errc::ScopeViolation, "unknown variable '" + std::string(name) + "'");
}

bool VariableRegistry::contains(Var id) const noexcept { return id < used_.size() && used_[id]; }

std::string VariableRegistry::name(Var id) const {
  if (contains(id)) return names_[id];
  return "#" + std::to_string(id);
}

VarSet VariableRegistry::all() const {
  VarSet s;
  for (Var v = 0; v < used_.size(); ++v)
    if (used_[v]) s.insert(v);
  return s;
}

void Assignment::set(Var v, bool value) {
  if (v >= values_.size()) values_.resize(v + 1, -1);
  values_[v] = value ? 1 : 0;
}

void Assignment::unset(Var v) {
  if (v < values_.size()) values_[v] = -1;
}

bool Assignment::value(Var v) const {
  if (!contains(v))
    throw Error(Errc::IncompleteAssignment, "variable #" + std::to_string(v) + " is unassigned");
  return values_[v] == 1;
}

std::optional<bool> Assignment::get(Var v) const noexcept {
  if (!contains(v)) return std::nullopt;
  return values_[v] == 1;
}

VarSet Assignment::domain() const {
  VarSet s;
  for (Var v = 0; v < values_.size(); ++v)
    if (values_[v] >= 0) s.insert(v);
  return s;
}

std::size_t Assignment::size() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](std::int8_t b) { return b >= 0; }));
}

bool Assignment::compatible_with(const Assignment& other) const noexcept {
  const std::size_t n = std::min(values_.size(), other.values_.size());
  for (std::size_t v = 0; v < n; ++v)
    if (values_[v] >= 0 && other.values_[v] >= 0 && values_[v] != other.values_[v]) return false;
  return true;
}

Assignment Assignment::merged(const Assignment& other) const {
  if (!compatible_with(other))
    throw Error(Errc::PreconditionViolated, "merging incompatible assignments");
  Assignment out = *this;
  if (other.values_.size() > out.values_.size()) out.values_.resize(other.values_.size(), -1);
  for (std::size_t v = 0; v < other.values_.size(); ++v)
    if (other.values_[v] >= 0) out.values_[v] = other.values_[v];
  return out;
}

Assignment Assignment::restricted(const VarSet& vars) const {
  Assignment out;
  vars.for_each([&](Var v) {
    if (contains(v)) out.set(v, values_[v] == 1);
  });
  return out;
}

Assignment Assignment::from_bits(std::span<const Var> vars, std::uint64_t bits) {
  Assignment tau;
  for (std::size_t i = 0; i < vars.size(); ++i) tau.set(vars[i], (bits >> i) & 1U);
  return tau;
}

bool operator==(const Assignment& a, const Assignment& b) noexcept {
  const std::size_t n = std::max(a.values_.size(), b.values_.size());
  for (std::size_t v = 0; v < n; ++v) {
    const std::int8_t x = v < a.values_.size() ? a.values_[v] : -1;
    const std::int8_t y = v < b.values_.size() ? b.values_[v] : -1;
    if (x != y) return false;
  }
  return true;
}

std::string format_assignment(const Assignment& tau, const VariableRegistry& names) {
  std::string out;
  tau.domain().for_each([&](Var v) {
    if (!out.empty()) out += ',';
    out += names.name(v);
    out += tau.value(v) ? "=1" : "=0";
  });
  return out;
}

}  // namespace kc
