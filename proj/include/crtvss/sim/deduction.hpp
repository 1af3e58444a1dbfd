#pragma once

#include <optional>
#include <set>

#include <gmpxx.h>

#include "crtvss/sim/term.hpp"

namespace crtvss::sim {

// The attacker's capabilities: pairing and projection, encryption with a
// known key and decryption with the inverse (session keys are their own
// inverses here), hashing, reading the body out of message-recovering
// signatures, and combining an observed DH public value with a known
// exponent. Signature tags cannot be minted: they need TPM-resident keys
// that never occur in any term.
struct DeductionContext {
  size_t depth_budget = 4;
  std::optional<mpz_class> dh_modulus;  // enables the DH-combine rule
};

struct ClosureResult {
  std::set<Term> terms;
  bool budget_exceeded = false;
};

// Analysis to a fixed point (projections, decryptions, signature bodies,
// DH combinations), then bounded synthesis restricted to the subterm
// universe of what was analyzed. Monotone and idempotent.
ClosureResult DeductionClosure(const std::set<Term>& knowledge, const DeductionContext& ctx);

// Derivability of an arbitrary goal term, including goals outside the
// subterm universe (e.g. a forged message the attacker would need).
bool CanDerive(const Term& goal, const std::set<Term>& knowledge, const DeductionContext& ctx);

}  // namespace crtvss::sim
