#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace crtvss {

// Value reduced into [0, modulus).
mpz_class NormalizeMod(const mpz_class& value, const mpz_class& modulus);

mpz_class MulMod(const mpz_class& lhs, const mpz_class& rhs, const mpz_class& modulus);

// base^exp mod modulus, exp >= 0.
mpz_class PowMod(const mpz_class& base, const mpz_class& exp, const mpz_class& modulus);

// Multiplicative inverse of a modulo m, in [1, m).
// Throws Error(kNotInvertible) when gcd(a, m) != 1.
mpz_class ModInverse(const mpz_class& a, const mpz_class& m);

// Miller-Rabin primality test. Inputs below 2^64 use the known
// deterministic witness set; larger inputs run `rounds` pseudorandom
// witnesses (composite escape probability <= 4^-rounds). The witness
// stream is derived from the input, so results are reproducible.
bool IsProbablePrime(const mpz_class& x, unsigned rounds = 64);

// Number of bits in |value|; 0 for value == 0.
unsigned BitLength(const mpz_class& value);

}  // namespace crtvss
