#ifndef GPMAP_ERROR_HPP
#define GPMAP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace gpmap {

enum class ErrorKind {
  InvalidArgument,
  ComplexEigenvalues,
  ComplexRoot,
  WrongBranch,
  InconsistentParameters,
  DegenerateConjugacy,
  TraceFailure,
  HitBudget,
  EmptyGate,
  NoSignChange,
  EmptyBoundary,
  Overflow,
  Inconclusive,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-readable kind; callers switch on kind(), humans read what().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gpmap

#endif
