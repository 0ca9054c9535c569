#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace algcoef {

/// Malformed polynomial text. offset() is the byte position of the problem.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::invalid_argument(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Caller supplied inconsistent input (unknown variable, dimension mismatch,
/// malformed problem file).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical hard stop: the method does not apply to this input, or it
/// cannot certify what it needs. Reported, not crashed on.
enum class FailureKind {
  kNoBranchThroughOrigin,
  kDegenerateBranch,  // H2 failure
  kH1Failure,
  kBranchSelection,
  kInvalidEmbedding,
  kCertificateUnknown,
  kPeriodicSupport,
  kNoAffineCriticalPoints,
  kNoPositiveCriticalPoint,
  kAmbiguousMinimality,
  kNonSmoothPoint,
  kDegenerateDirection,
  kExpansionVanishes,
  kEliminationDegenerate,
  kPrecisionExhausted,
  kValidationFailed,
};

const char* to_string(FailureKind kind);

class MathFailure : public std::runtime_error {
 public:
  MathFailure(FailureKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  FailureKind kind() const noexcept { return kind_; }

 private:
  FailureKind kind_;
};

}  // namespace algcoef
