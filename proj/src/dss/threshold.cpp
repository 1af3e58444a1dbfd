#include "crtvss/dss/threshold.hpp"

#include <algorithm>

#include "crtvss/common/error.hpp"
#include "crtvss/math/modmath.hpp"

namespace crtvss {
namespace {

void CheckSizing(const mpz_class& m_c, size_t t, const mpz_class& bound, const mpz_class& q,
                 const mpz_class& d) {
  const mpz_class joint = mpz_class(t) * bound;
  if (joint * joint >= m_c) {
    throw Error(ErrorCode::kBoundTooLarge, "(t*B)^2 reaches coalition capacity");
  }
  if (joint * (q + q * d) >= m_c) {
    throw Error(ErrorCode::kBoundTooLarge, "t*B*q*(1+d) reaches coalition capacity");
  }
}

const MemberState& MemberAt(const SigningSession& session, size_t slot) {
  if (slot >= session.members.size()) {
    throw Error(ErrorCode::kMissingShares, "no member at slot " + std::to_string(slot));
  }
  if (!session.nonces_ready) {
    throw Error(ErrorCode::kMissingShares, "nonce shares not generated yet");
  }
  return session.members[slot];
}

}  // namespace

SigningKeyMaterial MakeSigningKey(const mpz_class& secret, const AbParams& params,
                                  const CurveParams& curve, const mpz_class& nonce_bound,
                                  SeededRng& rng) {
  if (secret < 0 || secret >= params.m0) {
    throw Error(ErrorCode::kSecretOutOfRange, "secret must lie in [0, m0)");
  }
  if (nonce_bound < 2) {
    throw Error(ErrorCode::kBoundTooLarge, "nonce bound must be at least 2");
  }
  // Cap the mask so d = S + A*m0 keeps every coalition reconstruction
  // exact: M <= M_C for all coalitions, so sizing against M suffices.
  const mpz_class joint = mpz_class(params.t) * nonce_bound;
  const mpz_class mask_cap = (params.capacity / (joint * curve.order) - 1 - secret) / params.m0;
  if (mask_cap < 1 || joint * joint >= params.capacity) {
    throw Error(ErrorCode::kBoundTooLarge,
                "parameter capacity cannot host this nonce bound");
  }

  SigningKeyMaterial key;
  key.params = params;
  key.curve = curve;
  key.nonce_bound = nonce_bound;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const mpz_class mask = rng.UniformRange(1, mask_cap);
    const mpz_class lifted = secret + mask * params.m0;
    // d = 0 mod q would register the identity as the public key.
    if (lifted % curve.order == 0) {
      continue;
    }
    auto [dealing, masked] = SplitMaskedWithMask(secret, params, mask, rng);
    key.dealing = std::move(dealing);
    key.masked = std::move(masked);
    key.public_key = ScalarMul(key.masked.lifted, curve.base, curve);
    return key;
  }
  throw Error(ErrorCode::kSearchExhausted, "no usable mask for this curve order");
}

SigningSession BeginSession(const SigningKeyMaterial& key,
                            const std::vector<size_t>& coalition_indices,
                            const mpz_class& msg_digest, const mpz_class& nonce_bound) {
  SigningSession session;
  session.key = &key;
  session.ctx = MakeCoalitionContext(key.params, coalition_indices);
  session.msg_digest = NormalizeMod(msg_digest, key.curve.order);
  session.nonce_bound = nonce_bound;
  CheckSizing(session.ctx.m_c, session.ctx.indices.size(), nonce_bound, key.curve.order,
              key.masked.lifted);

  for (size_t slot = 0; slot < session.ctx.indices.size(); ++slot) {
    const size_t index = session.ctx.indices[slot];
    MemberState member;
    member.index = index;
    member.modulus = session.ctx.moduli[slot];
    member.d_share = key.dealing.shares.at(index - 1).value;
    session.members.push_back(std::move(member));
  }
  return session;
}

void JointNonceGen(SigningSession& session, SeededRng& rng) {
  const size_t t = session.members.size();
  std::vector<mpz_class> rho;
  std::vector<mpz_class> sigma;
  rho.reserve(t);
  sigma.reserve(t);
  for (size_t j = 0; j < t; ++j) {
    rho.push_back(rng.UniformRange(1, session.nonce_bound - 1));
    sigma.push_back(rng.UniformRange(1, session.nonce_bound - 1));
  }
  JointNonceFromDraws(session, rho, sigma);
}

void JointNonceFromDraws(SigningSession& session, const std::vector<mpz_class>& rho,
                         const std::vector<mpz_class>& sigma) {
  const size_t t = session.members.size();
  if (rho.size() != t || sigma.size() != t) {
    throw Error(ErrorCode::kMissingShares, "need one draw pair per coalition member");
  }
  for (size_t j = 0; j < t; ++j) {
    if (rho[j] < 1 || rho[j] >= session.nonce_bound || sigma[j] < 1 ||
        sigma[j] >= session.nonce_bound) {
      throw Error(ErrorCode::kBoundTooLarge, "nonce draw outside [1, B)");
    }
  }
  // Member i receives rho_j mod m_i from each j and sums pointwise.
  for (MemberState& member : session.members) {
    mpz_class k_sum = 0;
    mpz_class a_sum = 0;
    for (size_t j = 0; j < t; ++j) {
      k_sum = NormalizeMod(k_sum + rho[j] % member.modulus, member.modulus);
      a_sum = NormalizeMod(a_sum + sigma[j] % member.modulus, member.modulus);
    }
    member.k_share = k_sum;
    member.a_share = a_sum;
  }
  session.nonces_ready = true;
}

Round1Message Round1(const SigningSession& session, size_t slot) {
  const MemberState& member = MemberAt(session, slot);
  Round1Message message;
  message.index = member.index;
  message.v = MulMod(member.k_share, member.a_share, member.modulus);
  const mpz_class weighted = MulMod(session.ctx.lambdas[slot], member.a_share, session.ctx.m_c);
  message.w = ScalarMul(weighted, session.key->curve.base, session.key->curve);
  return message;
}

std::vector<mpz_class> CombineRound1(SigningSession& session,
                                     const std::vector<Round1Message>& messages) {
  const size_t t = session.ctx.indices.size();
  if (messages.size() != t) {
    throw Error(ErrorCode::kMissingShares, "round 1 incomplete");
  }
  const CurveParams& curve = session.key->curve;
  const mpz_class& q = curve.order;

  std::vector<Residue> residues;
  CurvePoint weighted_sum = CurvePoint::Identity();
  for (size_t slot = 0; slot < t; ++slot) {
    const Round1Message* found = nullptr;
    for (const Round1Message& message : messages) {
      if (message.index == session.ctx.indices[slot]) {
        found = &message;
        break;
      }
    }
    if (found == nullptr) {
      throw Error(ErrorCode::kMissingShares,
                  "no round-1 message from index " + std::to_string(session.ctx.indices[slot]));
    }
    residues.emplace_back(found->v, session.ctx.moduli[slot]);
    weighted_sum = PointAdd(weighted_sum, found->w, curve);
  }

  // Exact integer k*a by the sizing contract.
  const mpz_class ka = CrtReconstruct(residues, session.ctx);
  if (ka % q == 0) {
    throw Error(ErrorCode::kNonInvertibleKA, "k*a vanishes modulo the group order");
  }
  const mpz_class ka_inverse = ModInverse(ka % q, q);

  // weighted_sum = (a + kappa*M_C)*G for some kappa < t; peel each
  // possible wrap and let signature verification pick the right one.
  const CurvePoint wrap_step =
      ScalarMul(NormalizeMod(session.ctx.m_c, q), curve.base, curve);
  session.r_candidates.clear();
  CurvePoint candidate_point = weighted_sum;
  for (size_t kappa = 0; kappa < t; ++kappa) {
    const CurvePoint r_point = ScalarMul(ka_inverse, candidate_point, curve);
    session.r_candidates.push_back(r_point.is_identity ? mpz_class(0)
                                                       : NormalizeMod(r_point.x, q));
    candidate_point = PointAdd(candidate_point, PointNegate(wrap_step, curve), curve);
  }
  return session.r_candidates;
}

Round2Message Round2(const SigningSession& session, size_t slot) {
  const MemberState& member = MemberAt(session, slot);
  if (session.r_candidates.empty()) {
    throw Error(ErrorCode::kMissingShares, "round 1 has not been combined yet");
  }
  Round2Message message;
  message.index = member.index;
  message.sig_candidates.reserve(session.r_candidates.size());
  for (const mpz_class& r : session.r_candidates) {
    const mpz_class inner =
        NormalizeMod(session.msg_digest + r * member.d_share, member.modulus);
    message.sig_candidates.push_back(MulMod(member.k_share, inner, member.modulus));
  }
  return message;
}

AssembleResult AssembleAndSelect(SigningSession& session,
                                 const std::vector<Round2Message>& messages) {
  const size_t t = session.ctx.indices.size();
  if (messages.size() != t) {
    throw Error(ErrorCode::kMissingShares, "round 2 incomplete");
  }
  const CurveParams& curve = session.key->curve;

  for (size_t kappa = 0; kappa < session.r_candidates.size(); ++kappa) {
    std::vector<Residue> residues;
    bool complete = true;
    for (size_t slot = 0; slot < t && complete; ++slot) {
      const Round2Message* found = nullptr;
      for (const Round2Message& message : messages) {
        if (message.index == session.ctx.indices[slot]) {
          found = &message;
          break;
        }
      }
      if (found == nullptr || found->sig_candidates.size() != session.r_candidates.size()) {
        throw Error(ErrorCode::kMissingShares, "round 2 message missing or malformed");
      }
      residues.emplace_back(found->sig_candidates[kappa], session.ctx.moduli[slot]);
    }
    // Exact integer k*(m + r*d) below M_C for the true kappa.
    const mpz_class s = NormalizeMod(CrtReconstruct(residues, session.ctx), curve.order);
    const DssSignature candidate{session.r_candidates[kappa], s};
    if (DssVerify(session.key->public_key, session.msg_digest, candidate, curve)) {
      return AssembleResult{candidate, kappa};
    }
  }
  throw Error(ErrorCode::kNoValidCandidate,
              "no kappa candidate verifies; a round-1 or round-2 share is corrupt");
}

SessionOutcome RunHonestSession(const SigningKeyMaterial& key,
                                const std::vector<size_t>& coalition_indices,
                                const mpz_class& msg_digest, SeededRng& rng,
                                unsigned max_attempts) {
  for (unsigned attempt = 1; attempt <= max_attempts; ++attempt) {
    SigningSession session = BeginSession(key, coalition_indices, msg_digest, key.nonce_bound);
    const size_t t = session.members.size();

    std::vector<mpz_class> rho;
    std::vector<mpz_class> sigma;
    for (size_t j = 0; j < t; ++j) {
      rho.push_back(rng.UniformRange(1, key.nonce_bound - 1));
      sigma.push_back(rng.UniformRange(1, key.nonce_bound - 1));
    }
    JointNonceFromDraws(session, rho, sigma);

    try {
      std::vector<Round1Message> round1;
      for (size_t slot = 0; slot < t; ++slot) {
        round1.push_back(Round1(session, slot));
      }
      CombineRound1(session, round1);

      std::vector<Round2Message> round2;
      for (size_t slot = 0; slot < t; ++slot) {
        round2.push_back(Round2(session, slot));
      }
      const AssembleResult result = AssembleAndSelect(session, round2);

      SessionOutcome outcome;
      outcome.signature = result.signature;
      outcome.kappa = result.kappa;
      for (size_t j = 0; j < t; ++j) {
        outcome.k += rho[j];
        outcome.a += sigma[j];
      }
      outcome.attempts = attempt;
      return outcome;
    } catch (const Error& err) {
      // Degenerate nonce draws (ka = 0 mod q, or the honest candidate has
      // r or s = 0) are resampled; anything else propagates.
      if (err.code() != ErrorCode::kNonInvertibleKA &&
          err.code() != ErrorCode::kNoValidCandidate) {
        throw;
      }
    }
  }
  throw Error(ErrorCode::kSearchExhausted, "no usable nonce after the attempt budget");
}

CoalitionContext TrustedChoice(const std::vector<size_t>& neighbors, size_t t, size_t n,
                               const AbParams& params, AttestationService& service) {
  if (neighbors.size() < n) {
    throw Error(ErrorCode::kInsufficientTrustedNodes,
                "only " + std::to_string(neighbors.size()) + " neighbors responded, need " +
                    std::to_string(n));
  }
  std::vector<size_t> trusted;
  size_t considered = 0;
  for (size_t node : neighbors) {
    if (considered == n || trusted.size() == t) {
      break;
    }
    ++considered;
    const int mark = service.CachedTrust(node);
    if (mark == -1) {
      continue;  // cached failure: excluded without re-running auth
    }
    if (mark == 1 || service.Authenticate(node)) {
      trusted.push_back(node);
    }
  }
  if (trusted.size() < t) {
    throw Error(ErrorCode::kInsufficientTrustedNodes,
                "only " + std::to_string(trusted.size()) + " nodes passed attestation, need " +
                    std::to_string(t));
  }
  return MakeCoalitionContext(params, trusted);
}

}  // namespace crtvss
