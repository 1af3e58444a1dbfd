#include "crtvss/common/error.hpp"

namespace crtvss {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kIndexMismatch: return "IndexMismatch";
    case ErrorCode::kSearchExhausted: return "SearchExhausted";
    case ErrorCode::kWrongCoalitionSize: return "WrongCoalitionSize";
    case ErrorCode::kDuplicateIndex: return "DuplicateIndex";
    case ErrorCode::kSecretOutOfRange: return "SecretOutOfRange";
    case ErrorCode::kValueExceedsCapacity: return "ValueExceedsCapacity";
    case ErrorCode::kBadVerificationPrime: return "BadVerificationPrime";
    case ErrorCode::kModulusMismatch: return "ModulusMismatch";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kConstraintUnsatisfiable: return "ConstraintUnsatisfiable";
    case ErrorCode::kInvalidNewParams: return "InvalidNewParams";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kDuplicatePoint: return "DuplicatePoint";
    case ErrorCode::kConstraintViolated: return "ConstraintViolated";
    case ErrorCode::kInsufficientShares: return "InsufficientShares";
    case ErrorCode::kPointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::kZeroR: return "ZeroR";
    case ErrorCode::kZeroS: return "ZeroS";
    case ErrorCode::kNonInvertibleKA: return "NonInvertibleKA";
    case ErrorCode::kMissingShares: return "MissingShares";
    case ErrorCode::kBoundTooLarge: return "BoundTooLarge";
    case ErrorCode::kInsufficientTrustedNodes: return "InsufficientTrustedNodes";
    case ErrorCode::kNoValidCandidate: return "NoValidCandidate";
    case ErrorCode::kBadSlot: return "BadSlot";
    case ErrorCode::kNoCredential: return "NoCredential";
    case ErrorCode::kEmptyConfigSet: return "EmptyConfigSet";
    case ErrorCode::kAuthFailed: return "AuthFailed";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kUnknownScenario: return "UnknownScenario";
    case ErrorCode::kIoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace crtvss
