#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rop {

enum class Errc {
  kNotPrime,
  kOutOfRange,
  kDivisionByZero,
  kArityMismatch,
  kFieldMismatch,
  kNotMultilinearInVar,
  kNotMultilinear,
  kSameVariable,
  kVariableNotPresent,
  kIndexOverlap,
  kEmptySampleSet,
  kIncompleteGrid,
  kDuplicateNode,
  kTooFewVariables,
  kTooManyVariables,
  kNotSeparableAlongCut,
  kNotDecomposable,
  kPreconditionFailure,
  kFieldTooSmall,
  kDegreeTooSmall,
  kReadOnceViolation,
  kParseError,
  kInvalidParams,
  kScaleGuardExceeded,
};

std::string_view errc_name(Errc code);

// Every library failure is reported through this one type; `code()` tells
// callers (the CLI in particular) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace rop
