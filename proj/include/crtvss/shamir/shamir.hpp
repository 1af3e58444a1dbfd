#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "crtvss/common/op_counter.hpp"
#include "crtvss/common/rng.hpp"

namespace crtvss {

// Reference polynomial scheme used for the scheme comparison; plain
// Shamir, no commitments.
struct ShamirShare {
  size_t x = 0;  // evaluation point, the participant index
  mpz_class y;
  mpz_class field_prime;
};

struct PolyDealing {
  size_t degree = 0;  // t - 1
  mpz_class field_prime;
  std::vector<ShamirShare> shares;  // evaluations at x = 1..n
};

PolyDealing ShamirSplit(const mpz_class& secret, size_t t, size_t n, const mpz_class& prime,
                        SeededRng& rng);

// Fixture variant: the full coefficient vector (constant term first).
PolyDealing ShamirSplitWithCoeffs(const std::vector<mpz_class>& coeffs, size_t n,
                                  const mpz_class& prime);

// Lagrange interpolation at zero, the naive O(t^2)-multiplication way.
// The counter, when given, tallies field multiplications for the
// complexity comparison.
mpz_class ShamirReconstruct(const std::vector<ShamirShare>& shares, const mpz_class& prime,
                            OpCounter* counter = nullptr);

// Additive refresh: participant i contributes a dealing of w_i with
// sum(w_i) = 0 mod P; share j becomes S_j + sum_i w_{ij}. Throws
// Error(kConstraintViolated) when the refresh secrets do not cancel.
std::vector<ShamirShare> ShamirRefresh(const std::vector<PolyDealing>& refresh_dealings,
                                       const std::vector<ShamirShare>& shares);

// The BGW shares-product: v_i = a_i * b_i + c_i where deal_c shares 0
// with a degree-(2t-2) polynomial; interpolating v over at least 2t-1
// points recovers a*b.
mpz_class BgwProduct(const PolyDealing& deal_a, const PolyDealing& deal_b,
                     const PolyDealing& deal_c, const std::vector<size_t>& indices);

}  // namespace crtvss
