#include "crtvss/math/ab_params.hpp"

#include <algorithm>
#include <set>

#include "crtvss/common/error.hpp"
#include "crtvss/math/modmath.hpp"

namespace crtvss {
namespace {

constexpr unsigned kMaxSetAttempts = 10000;

mpz_class ProductOfSmallest(const std::vector<mpz_class>& sorted_moduli, size_t count) {
  mpz_class out = 1;
  for (size_t i = 0; i < count; ++i) {
    out *= sorted_moduli[i];
  }
  return out;
}

mpz_class ProductOfLargest(const std::vector<mpz_class>& sorted_moduli, size_t count) {
  mpz_class out = 1;
  for (size_t i = 0; i < count; ++i) {
    out *= sorted_moduli[sorted_moduli.size() - 1 - i];
  }
  return out;
}

}  // namespace

void ValidateAbParams(const AbParams& params) {
  if (params.t < 2 || params.t > params.n) {
    throw Error(ErrorCode::kBadParams, "need 2 <= t <= n");
  }
  if (params.moduli.size() != params.n || params.verif_primes.size() != params.n) {
    throw Error(ErrorCode::kBadParams, "modulus vectors sized differently from n");
  }
  if (!IsProbablePrime(params.m0)) {
    throw Error(ErrorCode::kBadParams, "m0 is not prime");
  }
  for (size_t i = 0; i < params.n; ++i) {
    const mpz_class& m = params.moduli[i];
    if (i > 0 && params.moduli[i - 1] >= m) {
      throw Error(ErrorCode::kBadParams, "moduli not strictly increasing");
    }
    if (!IsProbablePrime(m)) {
      throw Error(ErrorCode::kBadParams, "modulus " + m.get_str() + " is not prime");
    }
    if (gcd(m, params.m0) != 1) {
      throw Error(ErrorCode::kBadParams, "modulus shares a factor with m0");
    }
    for (size_t j = i + 1; j < params.n; ++j) {
      if (gcd(m, params.moduli[j]) != 1) {
        throw Error(ErrorCode::kBadParams, "moduli are not pairwise coprime");
      }
    }
    if (params.verif_primes[i] != 2 * m + 1 || !IsProbablePrime(params.verif_primes[i])) {
      throw Error(ErrorCode::kBadParams,
                  "verification prime is not a prime 2*m+1 for modulus " + m.get_str());
    }
  }

  const mpz_class smallest_product = ProductOfSmallest(params.moduli, params.t);
  const mpz_class largest_product = ProductOfLargest(params.moduli, params.t - 1);
  if (smallest_product <= params.m0 * params.m0 * largest_product) {
    throw Error(ErrorCode::kBadParams, "Asmuth-Bloom inequality violated");
  }
  if (params.capacity != smallest_product) {
    throw Error(ErrorCode::kBadParams, "capacity is not the product of the t smallest moduli");
  }
}

AbParams GenAbParams(size_t t, size_t n, const mpz_class& m0,
                     unsigned min_capacity_bits, SeededRng& rng) {
  if (t < 2 || t > n) {
    throw Error(ErrorCode::kBadParams, "need 2 <= t <= n");
  }
  if (!IsProbablePrime(m0)) {
    throw Error(ErrorCode::kBadParams, "m0 must be prime");
  }

  // Primes of L bits start at 2^(L-1), so the capacity is only guaranteed
  // t*(L-1) bits; size L from that, not from t*L.
  const unsigned capacity_per_modulus =
      min_capacity_bits == 0
          ? 2
          : 1 + (min_capacity_bits - 1 + static_cast<unsigned>(t) - 1) /
                    static_cast<unsigned>(t);
  const unsigned bit_length =
      std::max(capacity_per_modulus, 2 * BitLength(m0) + static_cast<unsigned>(t));

  // Enough headroom that exhausting it means the request is hopeless
  // (e.g. more n than there are Sophie Germain primes at this length).
  const uint64_t draw_budget =
      static_cast<uint64_t>(n) * bit_length * bit_length * 8 + 65536;

  for (unsigned attempt = 0; attempt < kMaxSetAttempts; ++attempt) {
    std::set<mpz_class> picked;
    uint64_t draws = 0;
    while (picked.size() < n) {
      if (++draws > draw_budget) {
        throw Error(ErrorCode::kSearchExhausted,
                    "no Sophie Germain prime set found at " + std::to_string(bit_length) +
                        " bits");
      }
      mpz_class candidate = rng.OddWithBits(bit_length);
      if (candidate == m0 || picked.contains(candidate)) {
        continue;
      }
      if (!IsProbablePrime(candidate) || !IsProbablePrime(2 * candidate + 1)) {
        continue;
      }
      picked.insert(std::move(candidate));
    }

    AbParams params;
    params.m0 = m0;
    params.moduli.assign(picked.begin(), picked.end());
    params.t = t;
    params.n = n;
    params.verif_primes.reserve(n);
    for (const mpz_class& m : params.moduli) {
      params.verif_primes.push_back(2 * m + 1);
    }
    params.capacity = ProductOfSmallest(params.moduli, t);

    const mpz_class largest_product = ProductOfLargest(params.moduli, t - 1);
    if (params.capacity > m0 * m0 * largest_product) {
      ValidateAbParams(params);
      return params;
    }
  }
  throw Error(ErrorCode::kSearchExhausted, "Asmuth-Bloom inequality failed every candidate set");
}

}  // namespace crtvss
