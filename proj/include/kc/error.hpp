#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kc {

/// Failure categories raised by the library. Every throwing entry point
/// raises kc::Error carrying one of these codes.
enum class Errc {
  CyclicGraph,
  RepeatedVariableOnPath,
  DanglingRef,
  NotDecomposable,
  IncompleteAssignment,
  ScopeTooLarge,
  ScopeViolation,
  NotLinearVtree,
  NotStructured,
  NoDecisionPath,
  HasAndNodes,
  TooFewVertices,
  EmptyGraph,
  EdgeNotCovered,
  VertexNotCovered,
  VertexOccurrenceDisconnected,
  NotATree,
  ClauseNotInAnyBag,
  InvalidInputDecomposition,
  NotAMatching,
  BadParameters,
  ConfigError,
  ParseError,
  PreconditionViolated,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace kc
