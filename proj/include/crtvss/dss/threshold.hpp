#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "crtvss/common/rng.hpp"
#include "crtvss/curve/curve.hpp"
#include "crtvss/curve/dss.hpp"
#include "crtvss/math/crt.hpp"
#include "crtvss/vss/vss.hpp"

namespace crtvss {

// Registered key pair for the distributed signature protocol. The
// effective private scalar is the lifted masked secret d = S + A*m0:
// that is the value CRT coalitions can actually reconstruct, so the
// public key is Q = d*G. The mask is capped so the session sizing
// contract t*B*q*(1+d) < M holds for the configured nonce bound.
struct SigningKeyMaterial {
  AbParams params;
  CurveParams curve;
  MaskedSecret masked;   // d = masked.lifted
  CurvePoint public_key;
  Dealing dealing;       // d's shares across the n nodes
  mpz_class nonce_bound; // per-member bound B the mask was sized for
};

SigningKeyMaterial MakeSigningKey(const mpz_class& secret, const AbParams& params,
                                  const CurveParams& curve, const mpz_class& nonce_bound,
                                  SeededRng& rng);

// One coalition member's private bundle during a session.
struct MemberState {
  size_t index = 0;
  mpz_class modulus;
  mpz_class d_share;
  mpz_class k_share;
  mpz_class a_share;
};

struct Round1Message {
  size_t index = 0;
  mpz_class v;   // k_i * a_i mod m_i
  CurvePoint w;  // ((lambda_i * a_i) mod M_C) * G
};

struct Round2Message {
  size_t index = 0;
  std::vector<mpz_class> sig_candidates;  // k_i * (m + r_kappa * d_i) mod m_i, per kappa
};

struct SigningSession {
  const SigningKeyMaterial* key = nullptr;
  CoalitionContext ctx;
  mpz_class msg_digest;
  mpz_class nonce_bound;
  std::vector<MemberState> members;  // aligned with ctx slots
  bool nonces_ready = false;
  std::vector<mpz_class> r_candidates;
};

// Builds the session and enforces the sizing contract
//   (t*B)^2 < M_C  and  t*B*(q + q*d) < M_C,
// which makes the two CRT reconstructions below exact integers.
// Throws Error(kBoundTooLarge) when it fails.
SigningSession BeginSession(const SigningKeyMaterial& key,
                            const std::vector<size_t>& coalition_indices,
                            const mpz_class& msg_digest, const mpz_class& nonce_bound);

// Joint nonce generation: member j samples rho_j, sigma_j in [1, B),
// direct-splits them over the coalition moduli, and everyone sums the
// received subshares pointwise. The sums encode k = sum(rho) and
// a = sum(sigma) without any single party knowing them.
void JointNonceGen(SigningSession& session, SeededRng& rng);

// Forced-draw variant for fixtures; draws must lie in [1, B).
void JointNonceFromDraws(SigningSession& session, const std::vector<mpz_class>& rho,
                         const std::vector<mpz_class>& sigma);

Round1Message Round1(const SigningSession& session, size_t slot);

// Reconstructs ka = CRT({v_i}) exactly, sums the w_i points to
// W = ((a + kappa*M_C) mod q) * G for some kappa in [0, t), and returns
// the candidate list r_0..r_{t-1} where
//   r_kappa = x( (ka)^-1 * (W - kappa*(M_C mod q)*G) ) mod q.
// Exactly one candidate corresponds to the true a. Throws
// Error(kNonInvertibleKA) when ka = 0 mod q (resample nonces).
std::vector<mpz_class> CombineRound1(SigningSession& session,
                                     const std::vector<Round1Message>& messages);

Round2Message Round2(const SigningSession& session, size_t slot);

struct AssembleResult {
  DssSignature signature;
  size_t kappa = 0;
};

// Reconstructs s_kappa = CRT({sig_i^(kappa)}) mod q for every kappa and
// returns the first (r_kappa, s_kappa) that verifies under Q. A failure
// across all candidates means some share was corrupted (fault attack) —
// Error(kNoValidCandidate); the protocol cannot name the cheater.
AssembleResult AssembleAndSelect(SigningSession& session,
                                 const std::vector<Round2Message>& messages);

struct SessionOutcome {
  DssSignature signature;
  size_t kappa = 0;
  mpz_class k;  // session nonce, known to the orchestrator only
  mpz_class a;
  unsigned attempts = 1;
};

// Drives one honest session end to end, resampling nonces when they turn
// out degenerate (ka divisible by q, or zero r/s).
SessionOutcome RunHonestSession(const SigningKeyMaterial& key,
                                const std::vector<size_t>& coalition_indices,
                                const mpz_class& msg_digest, SeededRng& rng,
                                unsigned max_attempts = 64);

// Trust gate for coalition choice. The service wraps whatever runs the
// 5-message attestation (the network simulator in scenarios, a mock in
// unit tests) plus the requester's cached trust marks.
class AttestationService {
 public:
  virtual ~AttestationService() = default;
  virtual int CachedTrust(size_t node_index) = 0;    // 1 trusted, 0 unknown, -1 failed
  virtual bool Authenticate(size_t node_index) = 0;  // runs auth, updates the cache
};

// Walks the neighbor list, skipping cached -1 marks without re-running
// authentication, until t trusted members are found among the first n
// candidates. Throws Error(kInsufficientTrustedNodes) otherwise.
CoalitionContext TrustedChoice(const std::vector<size_t>& neighbors, size_t t, size_t n,
                               const AbParams& params, AttestationService& service);

}  // namespace crtvss
