#include <map>
#include <set>
#include <vector>

#include "crtvss/common/rng.hpp"
#include "crtvss/dss/threshold.hpp"
#include "crtvss/math/modmath.hpp"
#include "test_util.hpp"

namespace {

using namespace crtvss;
using crtvss::testing::Expect;
using crtvss::testing::ExpectError;
using crtvss::testing::RunCase;

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

SigningKeyMaterial FixtureKey(uint64_t seed = 1) {
  SeededRng rng(seed);
  return MakeSigningKey(5, FixtureParams(), ToyCurve(), 4, rng);
}

void TestMakeSigningKey() {
  const SigningKeyMaterial key = FixtureKey();
  Expect(key.masked.secret == 5, "secret kept");
  Expect(key.masked.lifted == 5 + key.masked.mask * 7, "lifted key shape");
  Expect(key.public_key == ScalarMul(key.masked.lifted, ToyCurve().base, ToyCurve()),
         "Q = d*G");
  Expect(key.masked.lifted < key.params.capacity, "d below capacity");
  // Sizing contract built into the mask cap.
  const mpz_class joint = 2 * 4;
  Expect(joint * 19 * (1 + key.masked.lifted) < key.params.capacity,
         "t*B*q*(1+d) < M");

  SeededRng rng(2);
  ExpectError(ErrorCode::kBoundTooLarge,
              [&] { MakeSigningKey(5, FixtureParams(), ToyCurve(), 1 << 10, rng); },
              "huge nonce bound rejected");
}

void TestJointNonceFixture() {
  const SigningKeyMaterial key = FixtureKey();
  SigningSession session = BeginSession(key, {1, 2}, 11, 4);
  JointNonceFromDraws(session, {2, 3}, {1, 2});
  Expect(session.members[0].k_share == 5 % 53, "k share mod 53");
  Expect(session.members[0].a_share == 3 % 53, "a share mod 53");
  Expect(session.members[1].k_share == 5 % 83, "k share mod 83");
  Expect(session.members[1].a_share == 3 % 83, "a share mod 83");

  // All rho_j = 1 encodes k = t.
  SigningSession ones = BeginSession(key, {1, 2}, 11, 4);
  JointNonceFromDraws(ones, {1, 1}, {1, 1});
  Expect(ones.members[0].k_share == 2, "k = t for unit draws");

  ExpectError(ErrorCode::kBoundTooLarge,
              [&] {
                SigningSession bad = BeginSession(key, {1, 2}, 11, 4);
                JointNonceFromDraws(bad, {4, 1}, {1, 1});
              },
              "draw at the bound rejected");
  // t*B >= sqrt(M_C): B = 34 gives (2*34)^2 = 4624 > 4399.
  ExpectError(ErrorCode::kBoundTooLarge, [&] { BeginSession(key, {1, 2}, 11, 34); },
              "sizing contract violation");
}

void TestRound1() {
  const SigningKeyMaterial key = FixtureKey();
  SigningSession session = BeginSession(key, {1, 2}, 11, 4);
  JointNonceFromDraws(session, {2, 3}, {1, 2});

  const Round1Message msg = Round1(session, 0);
  Expect(msg.v == 15, "v = k_i * a_i = 15 mod 53");
  const mpz_class weighted = MulMod(session.ctx.lambdas[0], 3, session.ctx.m_c);
  Expect(msg.w == ScalarMul(weighted, ToyCurve().base, ToyCurve()),
         "w = ((lambda_i * a_i) mod M_C) * G");

  // a_i = 0 gives the identity point.
  SigningSession zeroed = BeginSession(key, {1, 2}, 11, 4);
  JointNonceFromDraws(zeroed, {2, 3}, {1, 2});
  zeroed.members[0].a_share = 0;
  Expect(Round1(zeroed, 0).w.is_identity, "a_i = 0 -> w = O");

  SigningSession not_ready = BeginSession(key, {1, 2}, 11, 4);
  ExpectError(ErrorCode::kMissingShares, [&] { Round1(not_ready, 0); },
              "nonces must exist first");
}

void TestCombineRound1() {
  const SigningKeyMaterial key = FixtureKey();
  const CurveParams& curve = ToyCurve();

  SigningSession session = BeginSession(key, {1, 2}, 11, 4);
  JointNonceFromDraws(session, {2, 3}, {1, 2});  // k = 5, a = 3
  std::vector<Round1Message> round1 = {Round1(session, 0), Round1(session, 1)};
  const std::vector<mpz_class> candidates = CombineRound1(session, round1);
  Expect(candidates.size() == 2, "t candidates");

  // Exactly one candidate equals x(k^-1 * G) mod q = x(4G) = 3.
  const mpz_class expected_r = 3;
  size_t hits = 0;
  for (const mpz_class& r : candidates) {
    if (r == expected_r) ++hits;
  }
  Expect(hits == 1, "exactly one candidate matches x(5^-1 G)");

  // kappa = 0 case, constructed through the CRT identity: member shares
  // (1, 0) encode a = lambda_1, and lambda_1*1 mod M_C + lambda_2*0 = a
  // with no wrap at all.
  SigningSession flat = BeginSession(key, {1, 2}, 11, 4);
  JointNonceFromDraws(flat, {1, 1}, {1, 1});
  flat.members[0].k_share = 2;
  flat.members[0].a_share = 1;
  flat.members[1].k_share = 2;
  flat.members[1].a_share = 0;
  const mpz_class a_flat = session.ctx.lambdas[0];  // CRT(1, 0)
  std::vector<Round1Message> flat_round1 = {Round1(flat, 0), Round1(flat, 1)};
  const std::vector<mpz_class> flat_candidates = CombineRound1(flat, flat_round1);
  const mpz_class ka = 2 * a_flat;
  const CurvePoint expected_point =
      ScalarMul(MulMod(ModInverse(ka % 19, 19), a_flat % 19, 19), curve.base, curve);
  Expect(flat_candidates[0] == NormalizeMod(expected_point.x, 19),
         "kappa = 0 candidate is already correct");

  // k*a divisible by q: inject shares encoding k = 19, a = 1 directly
  // (honest draws with that k would need a bound the sizing refuses).
  SigningSession divisible = BeginSession(key, {1, 2}, 11, 4);
  JointNonceFromDraws(divisible, {1, 1}, {1, 1});
  for (MemberState& member : divisible.members) {
    member.k_share = 19 % member.modulus;
    member.a_share = 1;
  }
  std::vector<Round1Message> div_round1 = {Round1(divisible, 0), Round1(divisible, 1)};
  ExpectError(ErrorCode::kNonInvertibleKA, [&] { CombineRound1(divisible, div_round1); },
              "ka multiple of q");

  ExpectError(ErrorCode::kMissingShares, [&] { CombineRound1(session, {round1[0]}); },
              "round 1 incomplete");
}

void TestRound2() {
  const SigningKeyMaterial key = FixtureKey();
  SigningSession session = BeginSession(key, {1, 2}, 11, 4);
  JointNonceFromDraws(session, {2, 3}, {1, 2});
  session.members[0].d_share = 16;
  session.members[0].k_share = 5;
  session.r_candidates = {4, 0};

  const Round2Message msg = Round2(session, 0);
  Expect(msg.sig_candidates.size() == 2, "t candidates in, t entries out");
  Expect(msg.sig_candidates[0] == 4, "5*(11 + 4*16) mod 53 = 4");
  Expect(msg.sig_candidates[1] == 55 % 53, "r = 0 entry degenerates to k_i * m");

  SigningSession no_candidates = BeginSession(key, {1, 2}, 11, 4);
  JointNonceFromDraws(no_candidates, {2, 3}, {1, 2});
  ExpectError(ErrorCode::kMissingShares, [&] { Round2(no_candidates, 0); },
              "candidates required before round 2");
}

SessionOutcome RunOnce(const SigningKeyMaterial& key, const std::vector<size_t>& coalition,
                       const mpz_class& digest, uint64_t seed) {
  SeededRng rng(seed);
  return RunHonestSession(key, coalition, digest, rng);
}

void TestEndToEndMatchesCentralOracle() {
  const SigningKeyMaterial key = FixtureKey();
  const CurveParams& curve = ToyCurve();
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    const mpz_class digest = seed % 19;
    const SessionOutcome outcome = RunOnce(key, {1, 2}, digest, seed);
    Expect(outcome.kappa < 2, "kappa within [0, t)");
    Expect(DssVerify(key.public_key, digest, outcome.signature, curve),
           "assembled signature verifies");
    const DssSignature central = DssSignCentral(key.masked.lifted, outcome.k, digest, curve);
    Expect(outcome.signature.r == central.r && outcome.signature.s == central.s,
           "bitwise match with the central signer");
  }
  // Coalition independence: same key, different coalitions, all verify.
  for (const auto& coalition :
       {std::vector<size_t>{1, 3}, std::vector<size_t>{2, 3}}) {
    const SessionOutcome outcome = RunOnce(key, coalition, 11, 7);
    Expect(DssVerify(key.public_key, 11, outcome.signature, curve),
           "other coalitions sign too");
  }
}

void TestNonceExactness() {
  // CRT of the v_i equals the integer k*a whenever the sizing holds.
  const SigningKeyMaterial key = FixtureKey();
  SeededRng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    SigningSession session = BeginSession(key, {1, 2}, 11, 4);
    const mpz_class rho0 = rng.UniformRange(1, 3), rho1 = rng.UniformRange(1, 3);
    const mpz_class sig0 = rng.UniformRange(1, 3), sig1 = rng.UniformRange(1, 3);
    JointNonceFromDraws(session, {rho0, rho1}, {sig0, sig1});
    std::vector<Round1Message> round1 = {Round1(session, 0), Round1(session, 1)};
    std::vector<Residue> residues = {{round1[0].v, 53}, {round1[1].v, 83}};
    const mpz_class ka = CrtReconstruct(residues, session.ctx);
    Expect(ka == (rho0 + rho1) * (sig0 + sig1), "reconstructed ka is the exact integer");
  }
}

void TestTamperDetection() {
  const SigningKeyMaterial key = FixtureKey();
  for (uint64_t seed = 11; seed <= 16; ++seed) {
    SeededRng rng(seed);
    SigningSession session = BeginSession(key, {1, 2}, 11, 4);
    JointNonceGen(session, rng);

    // Tamper one round-1 residue.
    {
      SigningSession forked = session;
      std::vector<Round1Message> round1 = {Round1(forked, 0), Round1(forked, 1)};
      round1[0].v = (round1[0].v + 1) % 53;
      bool rejected = false;
      try {
        CombineRound1(forked, round1);
        std::vector<Round2Message> round2 = {Round2(forked, 0), Round2(forked, 1)};
        AssembleAndSelect(forked, round2);
      } catch (const Error& err) {
        rejected = err.code() == ErrorCode::kNoValidCandidate ||
                   err.code() == ErrorCode::kNonInvertibleKA;
      }
      Expect(rejected, "tampered v share detected, seed " + std::to_string(seed));
    }

    // Tamper one round-2 signature share (every kappa column).
    {
      SigningSession forked = session;
      std::vector<Round1Message> round1 = {Round1(forked, 0), Round1(forked, 1)};
      CombineRound1(forked, round1);
      std::vector<Round2Message> round2 = {Round2(forked, 0), Round2(forked, 1)};
      for (mpz_class& entry : round2[1].sig_candidates) {
        entry = (entry + 1) % 83;
      }
      ExpectError(ErrorCode::kNoValidCandidate, [&] { AssembleAndSelect(forked, round2); },
                  "tampered sig share detected, seed " + std::to_string(seed));
    }
  }
}

void TestDegenerateSingleSigner() {
  // A coalition of one: kappa must always be 0. Handmade parameter set
  // with t = 1 (the generator refuses t < 2; the session machinery has no
  // reason to).
  AbParams solo;
  solo.m0 = 7;
  solo.moduli = {1889};  // Sophie Germain: 2*1889 + 1 = 3779 is prime
  solo.verif_primes = {3779};
  solo.t = 1;
  solo.n = 1;
  solo.capacity = 1889;

  SeededRng rng(4);
  SigningKeyMaterial key;
  key.params = solo;
  key.curve = ToyCurve();
  key.nonce_bound = 4;
  auto [dealing, masked] = SplitMaskedWithMask(5, solo, 2, rng);
  key.dealing = std::move(dealing);
  key.masked = std::move(masked);
  key.public_key = ScalarMul(key.masked.lifted, key.curve.base, key.curve);

  for (uint64_t seed = 1; seed <= 10; ++seed) {
    SeededRng session_rng(seed);
    const SessionOutcome outcome = RunHonestSession(key, {1}, 11, session_rng);
    Expect(outcome.kappa == 0, "single signer always kappa = 0");
    Expect(DssVerify(key.public_key, 11, outcome.signature, key.curve), "solo signature");
  }
}

class MockAttestation : public AttestationService {
 public:
  explicit MockAttestation(std::set<size_t> honest) : honest_(std::move(honest)) {}

  int CachedTrust(size_t node) override {
    const auto it = marks_.find(node);
    return it == marks_.end() ? 0 : it->second;
  }

  bool Authenticate(size_t node) override {
    ++auth_calls_;
    const bool ok = honest_.contains(node);
    marks_[node] = ok ? 1 : -1;
    return ok;
  }

  void PresetMark(size_t node, int mark) { marks_[node] = mark; }
  int auth_calls() const { return auth_calls_; }

 private:
  std::set<size_t> honest_;
  std::map<size_t, int> marks_;
  int auth_calls_ = 0;
};

void TestTrustedChoice() {
  SeededRng rng(9);
  const AbParams params = GenAbParams(3, 5, 7, 24, rng);
  const std::vector<size_t> neighbors = {1, 2, 3, 4, 5};

  MockAttestation all_honest({1, 2, 3, 4, 5});
  const CoalitionContext ctx = TrustedChoice(neighbors, 3, 5, params, all_honest);
  Expect(ctx.indices.size() == 3, "coalition of exactly t nodes");
  Expect(all_honest.auth_calls() == 3, "stops after t successes");

  MockAttestation mostly_bad({2, 5});  // 3 of 5 have compromised platforms
  ExpectError(ErrorCode::kInsufficientTrustedNodes,
              [&] { TrustedChoice(neighbors, 3, 5, params, mostly_bad); },
              "fewer than t pass attestation");

  // A cached -1 is excluded without re-running authentication.
  MockAttestation cached({1, 2, 3, 4, 5});
  cached.PresetMark(2, -1);
  cached.PresetMark(1, 1);
  const CoalitionContext ctx2 = TrustedChoice(neighbors, 3, 5, params, cached);
  Expect(ctx2.indices == std::vector<size_t>({1, 3, 4}), "skips the cached failure");
  Expect(cached.auth_calls() == 2, "neither cached mark re-authenticates");

  ExpectError(ErrorCode::kInsufficientTrustedNodes,
              [&] { TrustedChoice({1, 2}, 3, 5, params, all_honest); },
              "too few neighbors respond");
}

}  // namespace

int main() {
  RunCase("make_signing_key", TestMakeSigningKey);
  RunCase("joint_nonce_fixture", TestJointNonceFixture);
  RunCase("round1", TestRound1);
  RunCase("combine_round1", TestCombineRound1);
  RunCase("round2", TestRound2);
  RunCase("end_to_end_matches_central_oracle", TestEndToEndMatchesCentralOracle);
  RunCase("nonce_exactness", TestNonceExactness);
  RunCase("tamper_detection", TestTamperDetection);
  RunCase("degenerate_single_signer", TestDegenerateSingleSigner);
  RunCase("trusted_choice", TestTrustedChoice);
  return crtvss::testing::Summary("dss_tests");
}
