#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "crtvss/common/rng.hpp"
#include "crtvss/math/crt.hpp"
#include "crtvss/vss/share.hpp"

namespace crtvss {

// Splits a secret in [0, m0) with a uniform random mask A in
// [1, (M - 1 - secret) / m0]; the lifted value y = secret + A*m0 is what
// the residues actually share.
std::pair<Dealing, MaskedSecret> SplitMasked(const mpz_class& secret,
                                             const AbParams& params, SeededRng& rng);

// Same, with the mask chosen by the caller (fixtures, TTP refresh).
std::pair<Dealing, MaskedSecret> SplitMaskedWithMask(const mpz_class& secret,
                                                     const AbParams& params,
                                                     const mpz_class& mask, SeededRng& rng);

// Splits a value in [0, M) directly, without the A-mask. Used for
// protocol-internal randoms whose products must stay below coalition
// capacity; a mask would blow that budget.
Dealing SplitDirect(const mpz_class& value, const AbParams& params, SeededRng& rng);

// Commitment with a random generator g = h^2 mod p, h uniform, g != 1.
Commitment GenCommitment(const Share& share, const mpz_class& p, SeededRng& rng);

// Commitment with a caller-chosen generator (must have order share.modulus).
Commitment GenCommitmentWithGenerator(const Share& share, const mpz_class& p,
                                      const mpz_class& g);

// True iff g^{share.value} mod p equals the published z.
bool VerifyShare(const Share& share, const Commitment& commitment);

struct ReconstructResult {
  mpz_class lifted;  // y, the CRT solution below M_C
  mpz_class secret;  // y mod m0 (masked) or y itself (direct)
};

// Shares must be exactly the coalition's, in any order; commitment checks
// are the protocol layer's duty before calling this.
ReconstructResult Reconstruct(const std::vector<Share>& shares, const CoalitionContext& ctx,
                              const mpz_class& m0, DealingMode mode,
                              OpCounter* counter = nullptr);

Share AddShares(const Share& a, const Share& b);
Share MulShares(const Share& a, const Share& b);

// The shares-product protocol: coalition members locally form
// v_i = a_i * b_i mod m_i and reconstruct a*b, with no refresh term.
// Both dealings must be direct-mode over the same parameters and the
// underlying product must fit below M_C (checked dealer-side, where the
// plain values are reconstructible).
mpz_class SharesProduct(const Dealing& deal_a, const Dealing& deal_b,
                        const CoalitionContext& ctx);

// The mixed multiplicative/additive refresh of the CRT scheme: w_1..w_k
// multiply to 1 and w_{k+1}..w_n sum to 0 modulo the product of all n
// moduli, each w split into CRT subshares. The returned shares always
// equal the input shares modulo each m_j: the operation demonstrates
// that no modulus-preserving refresh can change CRT shares.
std::vector<Share> RefreshMixedDemo(const std::vector<Share>& shares, const AbParams& params,
                                    size_t k_split, SeededRng& rng);

// Modulus-changing refresh, performed by a trusted third party that
// knows the masked secret: a fresh mask and fresh parameters produce an
// unrelated dealing of the same secret.
std::pair<Dealing, MaskedSecret> RefreshTtp(const Dealing& dealing, const MaskedSecret& masked,
                                            const AbParams& new_params, SeededRng& rng);

}  // namespace crtvss
