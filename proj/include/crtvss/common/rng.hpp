#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace crtvss {

// Every random draw in the toolkit goes through one of these, so a fixed
// seed reproduces parameter sets, dealings and whole protocol transcripts
// bit for bit. mt19937_64 output is pinned by the standard, which keeps
// fixtures stable across platforms.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, upper_exclusive).
  mpz_class UniformBelow(const mpz_class& upper_exclusive);

  // Uniform in [lower, upper_inclusive].
  mpz_class UniformRange(const mpz_class& lower, const mpz_class& upper_inclusive);

  // Uniform odd integer of exactly `bits` bits (top bit set).
  mpz_class OddWithBits(unsigned bits);

 private:
  std::mt19937_64 engine_;
};

}  // namespace crtvss
