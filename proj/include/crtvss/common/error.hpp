#pragma once

#include <stdexcept>
#include <string>

namespace crtvss {

enum class ErrorCode {
  kNotInvertible,
  kIndexMismatch,
  kSearchExhausted,
  kWrongCoalitionSize,
  kDuplicateIndex,
  kSecretOutOfRange,
  kValueExceedsCapacity,
  kBadVerificationPrime,
  kModulusMismatch,
  kCapacityExceeded,
  kConstraintUnsatisfiable,
  kInvalidNewParams,
  kBadParams,
  kDuplicatePoint,
  kConstraintViolated,
  kInsufficientShares,
  kPointNotOnCurve,
  kZeroR,
  kZeroS,
  kNonInvertibleKA,
  kMissingShares,
  kBoundTooLarge,
  kInsufficientTrustedNodes,
  kNoValidCandidate,
  kBadSlot,
  kNoCredential,
  kEmptyConfigSet,
  kAuthFailed,
  kBudgetExceeded,
  kUnknownScenario,
  kIoError,
};

const char* ErrorCodeName(ErrorCode code);

// Single exception type for all protocol-level failures; the code tells
// callers (and tests) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace crtvss
