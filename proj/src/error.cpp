#include "kc/error.hpp"

namespace kc {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::CyclicGraph: return "CyclicGraph";
    case Errc::RepeatedVariableOnPath: return "RepeatedVariableOnPath";
    case Errc::DanglingRef: return "DanglingRef";
    case Errc::NotDecomposable: return "NotDecomposable";
    case Errc::IncompleteAssignment: return "IncompleteAssignment";
    case Errc::ScopeTooLarge: return "ScopeTooLarge";
    case Errc::ScopeViolation: return "ScopeViolation";
    case Errc::NotLinearVtree: return "NotLinearVtree";
    case Errc::NotStructured: return "NotStructured";
    case Errc::NoDecisionPath: return "NoDecisionPath";
    case Errc::HasAndNodes: return "HasAndNodes";
    case Errc::TooFewVertices: return "TooFewVertices";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::EdgeNotCovered: return "EdgeNotCovered";
    case Errc::VertexNotCovered: return "VertexNotCovered";
    case Errc::VertexOccurrenceDisconnected: return "VertexOccurrenceDisconnected";
    case Errc::NotATree: return "NotATree";
    case Errc::ClauseNotInAnyBag: return "ClauseNotInAnyBag";
    case Errc::InvalidInputDecomposition: return "InvalidInputDecomposition";
    case Errc::NotAMatching: return "NotAMatching";
    case Errc::BadParameters: return "BadParameters";
    case Errc::ConfigError: return "ConfigError";
    case Errc::ParseError: return "ParseError";
    case Errc::PreconditionViolated: return "PreconditionViolated";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace kc
