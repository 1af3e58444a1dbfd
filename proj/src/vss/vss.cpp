#include "crtvss/vss/vss.hpp"

#include <algorithm>
#include <map>

#include "crtvss/common/error.hpp"
#include "crtvss/math/modmath.hpp"

namespace crtvss {
namespace {

constexpr int kResampleLimit = 1000;

Dealing BuildDealing(const mpz_class& lifted, const AbParams& params, DealingMode mode,
                     SeededRng& rng) {
  Dealing dealing;
  dealing.params = params;
  dealing.mode = mode;
  dealing.shares.reserve(params.n);
  dealing.commitments.reserve(params.n);
  for (size_t i = 0; i < params.n; ++i) {
    Share share{i + 1, lifted % params.moduli[i], params.moduli[i]};
    dealing.commitments.push_back(GenCommitment(share, params.verif_primes[i], rng));
    dealing.shares.push_back(std::move(share));
  }
  return dealing;
}

mpz_class ProductOfAllModuli(const AbParams& params) {
  mpz_class out = 1;
  for (const mpz_class& m : params.moduli) {
    out *= m;
  }
  return out;
}

void RequireSameSlot(const Share& a, const Share& b) {
  if (a.index != b.index) {
    throw Error(ErrorCode::kIndexMismatch,
                "share indices " + std::to_string(a.index) + " and " + std::to_string(b.index));
  }
  if (a.modulus != b.modulus) {
    throw Error(ErrorCode::kModulusMismatch,
                "share moduli " + a.modulus.get_str() + " and " + b.modulus.get_str());
  }
}

}  // namespace

std::pair<Dealing, MaskedSecret> SplitMasked(const mpz_class& secret,
                                             const AbParams& params, SeededRng& rng) {
  if (secret < 0 || secret >= params.m0) {
    throw Error(ErrorCode::kSecretOutOfRange, "secret must lie in [0, m0)");
  }
  const mpz_class mask_bound = (params.capacity - 1 - secret) / params.m0;
  const mpz_class mask = rng.UniformRange(1, mask_bound);
  return SplitMaskedWithMask(secret, params, mask, rng);
}

std::pair<Dealing, MaskedSecret> SplitMaskedWithMask(const mpz_class& secret,
                                                     const AbParams& params,
                                                     const mpz_class& mask, SeededRng& rng) {
  if (secret < 0 || secret >= params.m0) {
    throw Error(ErrorCode::kSecretOutOfRange, "secret must lie in [0, m0)");
  }
  if (mask < 1) {
    throw Error(ErrorCode::kSecretOutOfRange, "mask must be positive");
  }
  MaskedSecret masked{secret, mask, secret + mask * params.m0};
  if (masked.lifted >= params.capacity) {
    throw Error(ErrorCode::kValueExceedsCapacity, "lifted secret reaches capacity");
  }
  Dealing dealing = BuildDealing(masked.lifted, params, DealingMode::kMasked, rng);
  return {std::move(dealing), std::move(masked)};
}

Dealing SplitDirect(const mpz_class& value, const AbParams& params, SeededRng& rng) {
  if (value < 0 || value >= params.capacity) {
    throw Error(ErrorCode::kValueExceedsCapacity, "direct value must lie in [0, M)");
  }
  return BuildDealing(value, params, DealingMode::kDirect, rng);
}

Commitment GenCommitment(const Share& share, const mpz_class& p, SeededRng& rng) {
  if (p != 2 * share.modulus + 1 || !IsProbablePrime(p)) {
    throw Error(ErrorCode::kBadVerificationPrime,
                p.get_str() + " is not a prime 2m+1 for modulus " + share.modulus.get_str());
  }
  for (int attempt = 0; attempt < kResampleLimit; ++attempt) {
    const mpz_class h = rng.UniformRange(2, p - 1);
    const mpz_class g = MulMod(h, h, p);
    if (g == 1) {
      continue;  // h == p-1
    }
    return GenCommitmentWithGenerator(share, p, g);
  }
  throw Error(ErrorCode::kSearchExhausted, "could not sample a commitment generator");
}

Commitment GenCommitmentWithGenerator(const Share& share, const mpz_class& p,
                                      const mpz_class& g) {
  if (p != 2 * share.modulus + 1 || !IsProbablePrime(p)) {
    throw Error(ErrorCode::kBadVerificationPrime,
                p.get_str() + " is not a prime 2m+1 for modulus " + share.modulus.get_str());
  }
  if (g <= 1 || g >= p || PowMod(g, share.modulus, p) != 1) {
    throw Error(ErrorCode::kBadVerificationPrime,
                "generator does not have order " + share.modulus.get_str());
  }
  return Commitment{share.index, p, g, PowMod(g, share.value, p)};
}

bool VerifyShare(const Share& share, const Commitment& commitment) {
  if (share.index != commitment.index) {
    throw Error(ErrorCode::kIndexMismatch, "share and commitment indices differ");
  }
  if (share.value < 0 || share.value >= share.modulus) {
    return false;
  }
  return PowMod(commitment.g, share.value, commitment.p) == commitment.z;
}

ReconstructResult Reconstruct(const std::vector<Share>& shares, const CoalitionContext& ctx,
                              const mpz_class& m0, DealingMode mode, OpCounter* counter) {
  if (shares.size() != ctx.indices.size()) {
    throw Error(ErrorCode::kWrongCoalitionSize,
                "got " + std::to_string(shares.size()) + " shares for a coalition of " +
                    std::to_string(ctx.indices.size()));
  }
  std::map<size_t, const Share*> by_index;
  for (const Share& share : shares) {
    if (!by_index.emplace(share.index, &share).second) {
      throw Error(ErrorCode::kDuplicateIndex, "two shares with index " + std::to_string(share.index));
    }
  }

  std::vector<Residue> residues;
  residues.reserve(ctx.indices.size());
  for (size_t slot = 0; slot < ctx.indices.size(); ++slot) {
    const auto it = by_index.find(ctx.indices[slot]);
    if (it == by_index.end()) {
      throw Error(ErrorCode::kIndexMismatch,
                  "no share for coalition index " + std::to_string(ctx.indices[slot]));
    }
    residues.emplace_back(it->second->value, it->second->modulus);
  }

  ReconstructResult result;
  result.lifted = CrtReconstruct(residues, ctx, counter);
  result.secret = (mode == DealingMode::kMasked) ? result.lifted % m0 : result.lifted;
  return result;
}

Share AddShares(const Share& a, const Share& b) {
  RequireSameSlot(a, b);
  return Share{a.index, (a.value + b.value) % a.modulus, a.modulus};
}

Share MulShares(const Share& a, const Share& b) {
  RequireSameSlot(a, b);
  return Share{a.index, a.value * b.value % a.modulus, a.modulus};
}

mpz_class SharesProduct(const Dealing& deal_a, const Dealing& deal_b,
                        const CoalitionContext& ctx) {
  if (deal_a.mode != DealingMode::kDirect || deal_b.mode != DealingMode::kDirect) {
    throw Error(ErrorCode::kBadParams, "shares-product needs direct-mode dealings");
  }
  if (deal_a.params.moduli != deal_b.params.moduli) {
    throw Error(ErrorCode::kModulusMismatch, "dealings use different parameter sets");
  }

  // Dealer-side capacity check: with direct dealings the plain values are
  // reconstructible, so the declared bound a*b < M_C can actually be tested.
  std::vector<Share> coalition_a;
  std::vector<Share> coalition_b;
  for (size_t index : ctx.indices) {
    coalition_a.push_back(deal_a.shares.at(index - 1));
    coalition_b.push_back(deal_b.shares.at(index - 1));
  }
  const mpz_class a = Reconstruct(coalition_a, ctx, deal_a.params.m0, DealingMode::kDirect).lifted;
  const mpz_class b = Reconstruct(coalition_b, ctx, deal_b.params.m0, DealingMode::kDirect).lifted;
  if (a * b >= ctx.m_c) {
    throw Error(ErrorCode::kCapacityExceeded,
                "product " + mpz_class(a * b).get_str() + " would wrap modulo M_C");
  }

  std::vector<Residue> products;
  for (size_t slot = 0; slot < ctx.indices.size(); ++slot) {
    products.emplace_back(coalition_a[slot].value * coalition_b[slot].value % ctx.moduli[slot],
                          ctx.moduli[slot]);
  }
  return CrtReconstruct(products, ctx);
}

std::vector<Share> RefreshMixedDemo(const std::vector<Share>& shares, const AbParams& params,
                                    size_t k_split, SeededRng& rng) {
  const size_t n = params.n;
  if (shares.size() != n) {
    throw Error(ErrorCode::kIndexMismatch, "need one share per participant");
  }
  if (k_split > n) {
    throw Error(ErrorCode::kConstraintUnsatisfiable, "k_split exceeds participant count");
  }
  // A single multiplicative factor would be forced to 1 and a single
  // additive term forced to 0; the proposition forbids both.
  if (k_split == 1 || n - k_split == 1) {
    throw Error(ErrorCode::kConstraintUnsatisfiable,
                "a lone refresh value cannot satisfy its constraint");
  }

  // The constraints live modulo the product of all n moduli, so that they
  // also hold modulo every individual m_j.
  const mpz_class everything = ProductOfAllModuli(params);

  std::vector<mpz_class> w(n);
  for (int attempt = 0;; ++attempt) {
    if (attempt >= kResampleLimit) {
      throw Error(ErrorCode::kSearchExhausted, "refresh constraint sampling failed");
    }
    bool ok = true;

    mpz_class product = 1;
    for (size_t i = 0; i + 1 < k_split; ++i) {
      do {
        w[i] = rng.UniformRange(2, everything - 1);
      } while (gcd(w[i], everything) != 1);
      product = MulMod(product, w[i], everything);
    }
    if (k_split >= 1) {
      w[k_split - 1] = ModInverse(product, everything);
      if (w[k_split - 1] == 1) {
        ok = false;
      }
    }

    mpz_class sum = 0;
    for (size_t i = k_split; i + 1 < n; ++i) {
      w[i] = rng.UniformRange(1, everything - 1);
      sum = NormalizeMod(sum + w[i], everything);
    }
    if (k_split < n) {
      w[n - 1] = NormalizeMod(-sum, everything);
      if (w[n - 1] == 0) {
        ok = false;
      }
    }
    if (ok) {
      break;
    }
  }

  // S'_j = S_j * prod(w_i mod m_j, i <= k) + sum(w_i mod m_j, i > k).
  std::vector<Share> refreshed;
  refreshed.reserve(n);
  for (size_t j = 0; j < n; ++j) {
    const mpz_class& m_j = shares[j].modulus;
    mpz_class mul_part = 1;
    for (size_t i = 0; i < k_split; ++i) {
      mul_part = MulMod(mul_part, w[i] % m_j, m_j);
    }
    mpz_class add_part = 0;
    for (size_t i = k_split; i < n; ++i) {
      add_part = NormalizeMod(add_part + w[i] % m_j, m_j);
    }
    refreshed.push_back(Share{shares[j].index,
                              NormalizeMod(shares[j].value * mul_part + add_part, m_j), m_j});
  }
  return refreshed;
}

std::pair<Dealing, MaskedSecret> RefreshTtp(const Dealing& dealing, const MaskedSecret& masked,
                                            const AbParams& new_params, SeededRng& rng) {
  if (dealing.mode != DealingMode::kMasked) {
    throw Error(ErrorCode::kInvalidNewParams, "only masked dealings are refreshed");
  }
  try {
    ValidateAbParams(new_params);
  } catch (const Error& err) {
    throw Error(ErrorCode::kInvalidNewParams, err.what());
  }
  if (masked.secret >= new_params.m0) {
    throw Error(ErrorCode::kInvalidNewParams, "new m0 does not admit the secret");
  }
  return SplitMasked(masked.secret, new_params, rng);
}

}  // namespace crtvss
