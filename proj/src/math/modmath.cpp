#include "crtvss/math/modmath.hpp"

#include <array>
#include <random>
#include <stdexcept>

#include "crtvss/common/error.hpp"

namespace crtvss {
namespace {

// Deterministic for all inputs below 2^64 (Sinclair/Jaeschke witness set).
constexpr std::array<uint64_t, 12> kSmallWitnesses = {2,  3,  5,  7,  11, 13,
                                                      17, 19, 23, 29, 31, 37};

bool MillerRabinWitness(const mpz_class& n, const mpz_class& witness,
                        const mpz_class& odd_part, unsigned two_exponent) {
  mpz_class x = PowMod(witness, odd_part, n);
  if (x == 1 || x == n - 1) {
    return true;
  }
  for (unsigned i = 1; i < two_exponent; ++i) {
    x = MulMod(x, x, n);
    if (x == n - 1) {
      return true;
    }
  }
  return false;
}

}  // namespace

mpz_class NormalizeMod(const mpz_class& value, const mpz_class& modulus) {
  if (modulus <= 0) {
    throw std::invalid_argument("modulus must be positive");
  }
  mpz_class out = value % modulus;
  if (out < 0) {
    out += modulus;
  }
  return out;
}

mpz_class MulMod(const mpz_class& lhs, const mpz_class& rhs, const mpz_class& modulus) {
  return NormalizeMod(lhs * rhs, modulus);
}

mpz_class PowMod(const mpz_class& base, const mpz_class& exp, const mpz_class& modulus) {
  if (exp < 0) {
    throw std::invalid_argument("modular exponent must be non-negative");
  }
  if (modulus <= 0) {
    throw std::invalid_argument("modulus must be positive");
  }
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

mpz_class ModInverse(const mpz_class& a, const mpz_class& m) {
  if (m < 2) {
    throw std::invalid_argument("inverse modulus must be >= 2");
  }
  mpz_class inverse;
  if (mpz_invert(inverse.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorCode::kNotInvertible,
                "gcd(" + a.get_str() + ", " + m.get_str() + ") != 1");
  }
  return NormalizeMod(inverse, m);
}

bool IsProbablePrime(const mpz_class& x, unsigned rounds) {
  if (x < 0) {
    throw std::invalid_argument("primality input must be non-negative");
  }
  if (x < 2) {
    return false;
  }
  if (x == 2 || x == 3) {
    return true;
  }
  if (mpz_even_p(x.get_mpz_t())) {
    return false;
  }

  mpz_class odd_part = x - 1;
  unsigned two_exponent = 0;
  while (mpz_even_p(odd_part.get_mpz_t())) {
    odd_part >>= 1;
    ++two_exponent;
  }

  if (mpz_fits_ulong_p(x.get_mpz_t())) {
    for (uint64_t w : kSmallWitnesses) {
      const mpz_class witness(w);
      if (witness % x == 0) {
        continue;
      }
      if (!MillerRabinWitness(x, witness, odd_part, two_exponent)) {
        return false;
      }
    }
    return true;
  }

  // Witness stream seeded from the input itself: reproducible, no shared state.
  std::mt19937_64 engine(0x9e3779b97f4a7c15ULL ^ mpz_get_ui(x.get_mpz_t()));
  for (unsigned round = 0; round < rounds; ++round) {
    mpz_class witness = 0;
    const size_t words = (BitLength(x) + 63) / 64;
    for (size_t i = 0; i < words; ++i) {
      witness <<= 64;
      witness += mpz_class(engine());
    }
    witness = 2 + witness % (x - 3);
    if (!MillerRabinWitness(x, witness, odd_part, two_exponent)) {
      return false;
    }
  }
  return true;
}

unsigned BitLength(const mpz_class& value) {
  if (value == 0) {
    return 0;
  }
  return static_cast<unsigned>(mpz_sizeinbase(value.get_mpz_t(), 2));
}

}  // namespace crtvss
