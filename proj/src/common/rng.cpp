#include "crtvss/common/rng.hpp"

#include <stdexcept>

namespace crtvss {

mpz_class SeededRng::UniformBelow(const mpz_class& upper_exclusive) {
  if (upper_exclusive <= 0) {
    throw std::invalid_argument("random upper bound must be positive");
  }

  const size_t bits = mpz_sizeinbase(upper_exclusive.get_mpz_t(), 2);
  const size_t words = (bits + 63) / 64;

  // Rejection sampling on fixed-width draws keeps the distribution uniform.
  while (true) {
    mpz_class candidate = 0;
    for (size_t i = 0; i < words; ++i) {
      candidate <<= 64;
      candidate += mpz_class(NextU64());
    }
    candidate >>= (words * 64 - bits);
    if (candidate < upper_exclusive) {
      return candidate;
    }
  }
}

mpz_class SeededRng::UniformRange(const mpz_class& lower, const mpz_class& upper_inclusive) {
  if (lower > upper_inclusive) {
    throw std::invalid_argument("empty random range");
  }
  return lower + UniformBelow(upper_inclusive - lower + 1);
}

mpz_class SeededRng::OddWithBits(unsigned bits) {
  if (bits < 2) {
    throw std::invalid_argument("need at least 2 bits");
  }
  mpz_class out = UniformBelow(mpz_class(1) << bits);
  mpz_setbit(out.get_mpz_t(), bits - 1);
  mpz_setbit(out.get_mpz_t(), 0);
  return out;
}

}  // namespace crtvss
