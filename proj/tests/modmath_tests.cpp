#include <algorithm>
#include <vector>

#include "crtvss/common/rng.hpp"
#include "crtvss/math/ab_params.hpp"
#include "crtvss/math/crt.hpp"
#include "crtvss/math/modmath.hpp"
#include "test_util.hpp"

namespace {

using crtvss::AbParams;
using crtvss::BitLength;
using crtvss::CoalitionContext;
using crtvss::CrtReconstruct;
using crtvss::ErrorCode;
using crtvss::GenAbParams;
using crtvss::IsProbablePrime;
using crtvss::MakeCoalitionContext;
using crtvss::ModInverse;
using crtvss::MulMod;
using crtvss::PowMod;
using crtvss::Residue;
using crtvss::SeededRng;
using crtvss::ValidateAbParams;
using crtvss::testing::Expect;
using crtvss::testing::ExpectError;
using crtvss::testing::RunCase;

// Trial-division oracle, independent of the Miller-Rabin path.
bool TrialDivisionPrime(uint64_t x) {
  if (x < 2) return false;
  for (uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

AbParams FixtureParams() {
  AbParams params;
  params.m0 = 7;
  params.moduli = {53, 83, 89};
  params.verif_primes = {107, 167, 179};
  params.t = 2;
  params.n = 3;
  params.capacity = 53 * 83;
  return params;
}

// All size-k index subsets of {1..n}.
std::vector<std::vector<size_t>> Combinations(size_t n, size_t k) {
  std::vector<std::vector<size_t>> out;
  std::vector<size_t> current;
  const std::function<void(size_t)> rec = [&](size_t start) {
    if (current.size() == k) {
      out.push_back(current);
      return;
    }
    for (size_t i = start; i <= n; ++i) {
      current.push_back(i);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(1);
  return out;
}

void TestModInverse() {
  Expect(ModInverse(1, 7) == 1, "identity inverse");
  const mpz_class inv = ModInverse(83, 53);
  Expect(inv == 23, "inverse of 83 mod 53");
  Expect(MulMod(83, inv, 53) == 1, "direct multiplication check");
  ExpectError(ErrorCode::kNotInvertible, [] { ModInverse(6, 9); }, "gcd 3 not invertible");

  SeededRng rng(11);
  for (int i = 0; i < 300; ++i) {
    const mpz_class m = 2 + rng.UniformBelow(1 << 20);
    const mpz_class a = rng.UniformBelow(m * 2) + 1;
    if (gcd(a, m) != 1) continue;
    const mpz_class x = ModInverse(a, m);
    Expect(x >= 1 && x < m, "inverse in [1, m)");
    Expect(MulMod(a, x, m) == 1, "a * inv == 1 mod m");
  }
}

void TestPrimality() {
  Expect(IsProbablePrime(107), "107 prime");
  Expect(!IsProbablePrime(27), "27 = 3^3");
  Expect(!IsProbablePrime(1), "unit is not prime");
  Expect(!IsProbablePrime(0), "zero is not prime");
  Expect(IsProbablePrime(2), "2 prime");

  for (uint64_t x = 0; x < 2000; ++x) {
    Expect(IsProbablePrime(x) == TrialDivisionPrime(x),
           "agrees with trial division at " + std::to_string(x));
  }
  // Strong pseudoprime to base 2; the witness set has to catch it.
  Expect(!IsProbablePrime(mpz_class("2047")), "2047 = 23 * 89");
  // Carmichael number.
  Expect(!IsProbablePrime(mpz_class("561")), "561 composite");
  // A known large prime (2^127 - 1) and its square.
  const mpz_class mersenne = (mpz_class(1) << 127) - 1;
  Expect(IsProbablePrime(mersenne), "2^127 - 1 prime");
  Expect(!IsProbablePrime(mersenne * mersenne), "square of a prime composite");
}

void TestCoalitionContext() {
  const AbParams params = FixtureParams();

  const CoalitionContext ctx12 = MakeCoalitionContext(params, {1, 2});
  Expect(ctx12.m_c == 4399, "M_C for {1,2}");
  Expect(ctx12.lambdas[0] == 1909, "lambda_1 for {1,2}");
  Expect(ctx12.lambdas[1] == 2491, "lambda_2 for {1,2}");
  Expect(ctx12.lambdas[0] % 53 == 1 && ctx12.lambdas[0] % 83 == 0, "lambda_1 residues");
  Expect(ctx12.lambdas[1] % 53 == 0 && ctx12.lambdas[1] % 83 == 1, "lambda_2 residues");

  const CoalitionContext ctx13 = MakeCoalitionContext(params, {1, 3});
  Expect(ctx13.m_c == 4717, "M_C for {1,3}");
  Expect(ctx13.lambdas[0] == 2492, "lambda_1 for {1,3}");
  Expect(ctx13.lambdas[1] == 2226, "lambda_3 for {1,3}");

  ExpectError(ErrorCode::kWrongCoalitionSize,
              [&] { MakeCoalitionContext(params, {1}); }, "one index too few");
  ExpectError(ErrorCode::kDuplicateIndex,
              [&] { MakeCoalitionContext(params, {2, 2}); }, "duplicate index");
  ExpectError(ErrorCode::kDuplicateIndex,
              [&] { MakeCoalitionContext(params, {1, 4}); }, "index out of range");
}

void TestCrtReconstruct() {
  const AbParams params = FixtureParams();
  const CoalitionContext ctx12 = MakeCoalitionContext(params, {1, 2});

  const mpz_class y = CrtReconstruct({{16, 53}, {41, 83}}, ctx12);
  Expect(y == 705, "fixture reconstruction");
  Expect(y % 53 == 16 && y % 83 == 41, "direct residue check");

  Expect(CrtReconstruct({{0, 53}, {0, 83}}, ctx12) == 0, "zero residues");

  const CoalitionContext ctx13 = MakeCoalitionContext(params, {1, 3});
  Expect(CrtReconstruct({{16, 53}, {82, 89}}, ctx13) == 705, "alternate coalition, same y");

  ExpectError(ErrorCode::kIndexMismatch,
              [&] { CrtReconstruct({{16, 53}, {82, 89}}, ctx12); }, "misaligned moduli");
  ExpectError(ErrorCode::kIndexMismatch,
              [&] { CrtReconstruct({{16, 53}}, ctx12); }, "residue count mismatch");
  ExpectError(ErrorCode::kIndexMismatch,
              [&] { CrtReconstruct({{53, 53}, {41, 83}}, ctx12); }, "residue out of range");
}

// Round trip of random y over every coalition, and lambda orthogonality.
void TestCrtRoundTripProperty() {
  SeededRng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t t = 2 + static_cast<size_t>(rng.NextU64() % 2);   // 2..3
    const size_t n = t + static_cast<size_t>(rng.NextU64() % 3);   // t..t+2
    const AbParams params = GenAbParams(t, n, 7, 16, rng);
    ValidateAbParams(params);

    for (const auto& coalition : Combinations(n, t)) {
      const CoalitionContext ctx = MakeCoalitionContext(params, coalition);
      for (size_t i = 0; i < ctx.indices.size(); ++i) {
        for (size_t j = 0; j < ctx.indices.size(); ++j) {
          const mpz_class expected = (i == j) ? 1 : 0;
          Expect(ctx.lambdas[i] % ctx.moduli[j] == expected, "lambda orthogonality");
        }
        Expect(ctx.lambdas[i] > 0 && ctx.lambdas[i] < ctx.m_c, "lambda in (0, M_C)");
      }
      const mpz_class y = rng.UniformBelow(ctx.m_c);
      std::vector<Residue> residues;
      for (const mpz_class& modulus : ctx.moduli) {
        residues.emplace_back(y % modulus, modulus);
      }
      Expect(CrtReconstruct(residues, ctx) == y, "round trip recovers y exactly");
    }
  }
}

void TestGenAbParams() {
  SeededRng rng(5);
  const AbParams params = GenAbParams(2, 3, 7, 12, rng);
  ValidateAbParams(params);
  Expect(BitLength(params.capacity) >= 12, "capacity meets requested bits");
  Expect(params.moduli.size() == 3 && params.t == 2, "shape");

  // Determinism: the same seed reproduces the same set.
  SeededRng rng_a(99);
  SeededRng rng_b(99);
  const AbParams a = GenAbParams(2, 4, 11, 24, rng_a);
  const AbParams b = GenAbParams(2, 4, 11, 24, rng_b);
  Expect(a.moduli == b.moduli && a.verif_primes == b.verif_primes, "seed determinism");

  // Degenerate n = t must work.
  SeededRng rng_c(3);
  const AbParams square = GenAbParams(2, 2, 7, 12, rng_c);
  ValidateAbParams(square);

  // t > n rejected.
  SeededRng rng_d(1);
  ExpectError(ErrorCode::kBadParams, [&] { GenAbParams(3, 2, 7, 12, rng_d); }, "t > n");
  ExpectError(ErrorCode::kBadParams, [&] { GenAbParams(1, 2, 7, 12, rng_d); }, "t < 2");
  ExpectError(ErrorCode::kBadParams, [&] { GenAbParams(2, 3, 8, 12, rng_d); }, "m0 composite");

  // Larger thresholds still produce valid sets (exercises the bit-length floor).
  SeededRng rng_e(17);
  const AbParams wide = GenAbParams(4, 6, 13, 40, rng_e);
  ValidateAbParams(wide);
  Expect(BitLength(wide.capacity) >= 40, "wide capacity");
}

void TestValidatorCatchesBadSets() {
  AbParams params = FixtureParams();
  ValidateAbParams(params);

  AbParams bad = params;
  bad.moduli[1] = 82;  // composite
  bad.verif_primes[1] = 165;
  ExpectError(ErrorCode::kBadParams, [&] { ValidateAbParams(bad); }, "composite modulus");

  bad = params;
  std::swap(bad.moduli[0], bad.moduli[1]);
  ExpectError(ErrorCode::kBadParams, [&] { ValidateAbParams(bad); }, "unsorted moduli");

  bad = params;
  bad.verif_primes[0] = 109;
  ExpectError(ErrorCode::kBadParams, [&] { ValidateAbParams(bad); }, "p != 2m+1");

  bad = params;
  bad.capacity = 4400;
  ExpectError(ErrorCode::kBadParams, [&] { ValidateAbParams(bad); }, "wrong capacity");

  bad = params;
  bad.m0 = 61;  // 53*83 = 4399 <= 61^2 * 89
  bad.capacity = 4399;
  ExpectError(ErrorCode::kBadParams, [&] { ValidateAbParams(bad); },
              "Asmuth-Bloom inequality");
}

void TestPowModAgainstSquareAndMultiply() {
  // Independent square-and-multiply oracle.
  const auto slow_pow = [](mpz_class base, mpz_class exp, const mpz_class& mod) {
    mpz_class acc = 1 % mod;
    base %= mod;
    while (exp > 0) {
      if (mpz_odd_p(exp.get_mpz_t())) {
        acc = acc * base % mod;
      }
      base = base * base % mod;
      exp >>= 1;
    }
    return acc;
  };
  Expect(PowMod(9, 16, 107) == slow_pow(9, 16, 107), "9^16 mod 107");
  Expect(PowMod(9, 16, 107) == 13, "frozen fixture value");
  SeededRng rng(23);
  for (int i = 0; i < 100; ++i) {
    const mpz_class mod = 2 + rng.UniformBelow(1 << 16);
    const mpz_class base = rng.UniformBelow(mod);
    const mpz_class exp = rng.UniformBelow(1 << 12);
    Expect(PowMod(base, exp, mod) == slow_pow(base, exp, mod), "random PowMod check");
  }
}

}  // namespace

int main() {
  RunCase("mod_inverse", TestModInverse);
  RunCase("primality", TestPrimality);
  RunCase("coalition_context", TestCoalitionContext);
  RunCase("crt_reconstruct", TestCrtReconstruct);
  RunCase("crt_round_trip_property", TestCrtRoundTripProperty);
  RunCase("gen_ab_params", TestGenAbParams);
  RunCase("validator_catches_bad_sets", TestValidatorCatchesBadSets);
  RunCase("powmod_oracle", TestPowModAgainstSquareAndMultiply);
  return crtvss::testing::Summary("modmath_tests");
}
