#pragma once

#include <set>
#include <string>
#include <vector>

#include "crtvss/sim/deduction.hpp"
#include "crtvss/sim/term.hpp"

namespace crtvss::sim {

// Rank 0 marks what must stay out of the enemy's hands, rank 1 what may
// be public. Following the protocol's rank figure: ids, INIT, n1, im and
// the group generator are rank 1; n2, the TPM signatures, both DH public
// parts, DH exponents, session keys and the AIK-signed key info are
// rank 0. Pairs take the minimum of their parts, ciphertexts the rank of
// their key, hashes are public.
//
// Signatures, DH publics and ciphertexts are rank 0 yet legitimately
// cross the wire (the enemy observes and replays them; the protocol's
// security does not rest on their secrecy). What the enemy must never
// *derive* are the bare secrets: the rank-0 nonces, session keys and
// exponents. The check below therefore scans the deduction closure for
// exactly those.
class RankAssignment {
 public:
  void MarkSecretNonce(const std::string& hex_value);
  void MarkSecretKeyFingerprint(const std::string& fingerprint);

  int Rank(const Term& term) const;

  // Secret-kind rank-0 terms occurring in the closure.
  std::vector<Term> Violations(const std::set<Term>& closure) const;

 private:
  std::set<std::string> secret_nonces_;
  std::set<std::string> secret_key_fingerprints_;
};

// True iff closing the observation set yields no derivable bare secret.
bool RankCheck(const std::set<Term>& observations, const RankAssignment& rank,
               const DeductionContext& ctx, std::vector<Term>* violations = nullptr);

}  // namespace crtvss::sim
