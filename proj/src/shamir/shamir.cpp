#include "crtvss/shamir/shamir.hpp"

#include <set>

#include "crtvss/common/error.hpp"
#include "crtvss/math/modmath.hpp"

namespace crtvss {
namespace {

mpz_class EvaluatePoly(const std::vector<mpz_class>& coeffs, size_t x, const mpz_class& prime) {
  // Horner, highest coefficient first.
  mpz_class acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = NormalizeMod(acc * x + *it, prime);
  }
  return acc;
}

}  // namespace

PolyDealing ShamirSplit(const mpz_class& secret, size_t t, size_t n, const mpz_class& prime,
                        SeededRng& rng) {
  if (t < 1 || t > n || mpz_class(n) >= prime || secret < 0 || secret >= prime) {
    throw Error(ErrorCode::kBadParams, "need 1 <= t <= n < P and secret in [0, P)");
  }
  std::vector<mpz_class> coeffs;
  coeffs.reserve(t);
  coeffs.push_back(secret);
  for (size_t i = 1; i < t; ++i) {
    coeffs.push_back(rng.UniformBelow(prime));
  }
  return ShamirSplitWithCoeffs(coeffs, n, prime);
}

PolyDealing ShamirSplitWithCoeffs(const std::vector<mpz_class>& coeffs, size_t n,
                                  const mpz_class& prime) {
  if (coeffs.empty() || coeffs.size() > n || mpz_class(n) >= prime) {
    throw Error(ErrorCode::kBadParams, "need 1 <= #coeffs <= n < P");
  }
  PolyDealing dealing;
  dealing.degree = coeffs.size() - 1;
  dealing.field_prime = prime;
  dealing.shares.reserve(n);
  for (size_t x = 1; x <= n; ++x) {
    dealing.shares.push_back(ShamirShare{x, EvaluatePoly(coeffs, x, prime), prime});
  }
  return dealing;
}

mpz_class ShamirReconstruct(const std::vector<ShamirShare>& shares, const mpz_class& prime,
                            OpCounter* counter) {
  if (shares.empty()) {
    throw Error(ErrorCode::kBadParams, "no shares to interpolate");
  }
  std::set<size_t> points;
  for (const ShamirShare& share : shares) {
    if (!points.insert(share.x).second) {
      throw Error(ErrorCode::kDuplicatePoint,
                  "evaluation point " + std::to_string(share.x) + " repeats");
    }
  }

  const auto count_mul = [counter](const mpz_class& a, const mpz_class& b,
                                   const mpz_class& mod) {
    if (counter != nullptr) {
      ++counter->mults;
    }
    return MulMod(a, b, mod);
  };

  mpz_class acc = 0;
  for (const ShamirShare& share : shares) {
    mpz_class numerator = 1;
    mpz_class denominator = 1;
    for (const ShamirShare& other : shares) {
      if (other.x == share.x) {
        continue;
      }
      numerator = count_mul(numerator, NormalizeMod(mpz_class(0) - mpz_class(other.x), prime),
                            prime);
      denominator = count_mul(
          denominator, NormalizeMod(mpz_class(share.x) - mpz_class(other.x), prime), prime);
    }
    mpz_class term = count_mul(share.y, numerator, prime);
    term = count_mul(term, ModInverse(denominator, prime), prime);
    acc = NormalizeMod(acc + term, prime);
  }
  return acc;
}

std::vector<ShamirShare> ShamirRefresh(const std::vector<PolyDealing>& refresh_dealings,
                                       const std::vector<ShamirShare>& shares) {
  if (shares.empty() || refresh_dealings.empty()) {
    throw Error(ErrorCode::kBadParams, "nothing to refresh");
  }
  const mpz_class& prime = shares.front().field_prime;

  mpz_class refresh_sum = 0;
  for (const PolyDealing& dealing : refresh_dealings) {
    if (dealing.shares.size() < shares.size()) {
      throw Error(ErrorCode::kBadParams, "refresh dealing is missing subshares");
    }
    std::vector<ShamirShare> opening(dealing.shares.begin(),
                                     dealing.shares.begin() +
                                         static_cast<std::ptrdiff_t>(dealing.degree + 1));
    refresh_sum = NormalizeMod(refresh_sum + ShamirReconstruct(opening, prime), prime);
  }
  if (refresh_sum != 0) {
    throw Error(ErrorCode::kConstraintViolated,
                "refresh secrets sum to " + refresh_sum.get_str() + ", not 0");
  }

  std::vector<ShamirShare> refreshed = shares;
  for (size_t j = 0; j < refreshed.size(); ++j) {
    mpz_class delta = 0;
    for (const PolyDealing& dealing : refresh_dealings) {
      delta = NormalizeMod(delta + dealing.shares[j].y, prime);
    }
    refreshed[j].y = NormalizeMod(refreshed[j].y + delta, prime);
  }
  return refreshed;
}

mpz_class BgwProduct(const PolyDealing& deal_a, const PolyDealing& deal_b,
                     const PolyDealing& deal_c, const std::vector<size_t>& indices) {
  const size_t t = deal_a.degree + 1;
  if (indices.size() < 2 * t - 1) {
    throw Error(ErrorCode::kInsufficientShares,
                "product polynomial has degree " + std::to_string(2 * t - 2) + ", need " +
                    std::to_string(2 * t - 1) + " shares");
  }
  if (deal_b.degree != deal_a.degree || deal_c.degree != 2 * t - 2) {
    throw Error(ErrorCode::kBadParams, "dealing degrees do not line up");
  }
  const mpz_class& prime = deal_a.field_prime;

  std::vector<ShamirShare> exchanged;
  exchanged.reserve(indices.size());
  for (size_t index : indices) {
    if (index < 1 || index > deal_a.shares.size() || index > deal_c.shares.size()) {
      throw Error(ErrorCode::kBadParams, "index outside dealing");
    }
    const mpz_class v = NormalizeMod(
        deal_a.shares[index - 1].y * deal_b.shares[index - 1].y + deal_c.shares[index - 1].y,
        prime);
    exchanged.push_back(ShamirShare{index, v, prime});
  }
  return ShamirReconstruct(exchanged, prime);
}

}  // namespace crtvss
