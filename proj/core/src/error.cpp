#include "gpmap/error.hpp"

namespace gpmap {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ComplexEigenvalues: return "ComplexEigenvalues";
    case ErrorKind::ComplexRoot: return "ComplexRoot";
    case ErrorKind::WrongBranch: return "WrongBranch";
    case ErrorKind::InconsistentParameters: return "InconsistentParameters";
    case ErrorKind::DegenerateConjugacy: return "DegenerateConjugacy";
    case ErrorKind::TraceFailure: return "TraceFailure";
    case ErrorKind::HitBudget: return "HitBudget";
    case ErrorKind::EmptyGate: return "EmptyGate";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::EmptyBoundary: return "EmptyBoundary";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace gpmap
