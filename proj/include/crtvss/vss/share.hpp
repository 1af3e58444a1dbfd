#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "crtvss/math/ab_params.hpp"

namespace crtvss {

// One participant's residue share: value = y mod modulus.
struct Share {
  size_t index = 0;
  mpz_class value;
  mpz_class modulus;
};

// Public verification triple for one share. g generates the order-m_i
// subgroup of Z*_{p_i} (p_i = 2m_i + 1), z = g^{S_i} mod p_i. Distinct
// share values give distinct z because g has prime order.
struct Commitment {
  size_t index = 0;
  mpz_class p;
  mpz_class g;
  mpz_class z;
};

enum class DealingMode { kMasked, kDirect };

// The dealer-side view of a masked secret: S lifted to y = S + A * m0
// with a random positive mask A, y < capacity.
struct MaskedSecret {
  mpz_class secret;
  mpz_class mask;
  mpz_class lifted;
};

// Everything a dealer publishes for one sharing: n shares (delivered
// privately) and n commitments (broadcast).
struct Dealing {
  AbParams params;
  std::vector<Share> shares;
  std::vector<Commitment> commitments;
  DealingMode mode = DealingMode::kMasked;
};

}  // namespace crtvss
