#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "crtvss/common/op_counter.hpp"
#include "crtvss/math/ab_params.hpp"

namespace crtvss {

// Reconstruction coefficients for one coalition of t participants.
// lambda_i = M'_{C,i} * M_{C\{i}} with M'_{C,i} the inverse of M_{C\{i}}
// modulo m_i, so lambda_i is 1 mod m_i and 0 mod every other coalition
// modulus. Computing them is per-coalition setup; reconstruction itself
// is then t multiplications.
struct CoalitionContext {
  std::vector<size_t> indices;      // sorted, 1-based participant indices
  std::vector<mpz_class> moduli;    // aligned with indices
  std::vector<mpz_class> lambdas;   // aligned with indices
  mpz_class m_c;                    // product of coalition moduli
};

// Throws Error(kWrongCoalitionSize) unless exactly t distinct valid
// indices are given, Error(kDuplicateIndex) on repeats.
CoalitionContext MakeCoalitionContext(const AbParams& params,
                                      const std::vector<size_t>& indices);

// One residue: (value, modulus) with 0 <= value < modulus.
using Residue = std::pair<mpz_class, mpz_class>;

// y = sum(value_i * lambda_i) mod M_C; the unique y < M_C congruent to
// every residue. Residues must align with the context (same order, same
// moduli) or Error(kIndexMismatch) is thrown.
mpz_class CrtReconstruct(const std::vector<Residue>& residues,
                         const CoalitionContext& ctx,
                         OpCounter* counter = nullptr);

}  // namespace crtvss
