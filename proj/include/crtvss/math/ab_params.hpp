#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "crtvss/common/rng.hpp"

namespace crtvss {

// Asmuth-Bloom modulus system. moduli m_1 < ... < m_n are Sophie Germain
// primes (p_i = 2m_i + 1 prime, giving each participant an order-m_i
// commitment subgroup of Z*_{p_i}); m_0 is the secret-space modulus.
// capacity = m_1 * ... * m_t is the range in which CRT reconstruction by
// any t-coalition is exact.
struct AbParams {
  mpz_class m0;
  std::vector<mpz_class> moduli;
  std::vector<mpz_class> verif_primes;
  size_t t = 0;
  size_t n = 0;
  mpz_class capacity;
};

// Checks every structural invariant:
//   - 2 <= t <= n, vector sizes match,
//   - m0 and every m_i prime, moduli strictly increasing,
//   - gcd(m_i, m_j) = 1 and gcd(m_i, m0) = 1,
//   - p_i = 2*m_i + 1 and prime,
//   - prod of t smallest moduli > m0^2 * prod of (t-1) largest,
//   - capacity equals the product of the t smallest moduli.
// Kept free of any generation logic so tests can use it as an
// independent re-check of generator output.
void ValidateAbParams(const AbParams& params);

// Searches for a parameter set with capacity of at least min_capacity_bits
// bits. Moduli are sampled at a common bit length L = max(ceil(bits/t),
// 2*bits(m0) + t); the second bound makes the Asmuth-Bloom inequality hold
// for any draw, the first meets the capacity request. Deterministic for a
// fixed rng seed. Throws Error(kSearchExhausted) if the draw budget runs
// out, Error(kBadParams) on an invalid (t, n, m0) request.
AbParams GenAbParams(size_t t, size_t n, const mpz_class& m0,
                     unsigned min_capacity_bits, SeededRng& rng);

}  // namespace crtvss
