#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "kc/variables.hpp"

namespace kc {

using BigInt = boost::multiprecision::cpp_int;

/// Exact model count of a function over `scope` (count ≤ 2^|scope|).
struct CountResult {
  BigInt count;
  VarSet scope;
};

}  // namespace kc
