#include <vector>

#include "crtvss/curve/curve.hpp"
#include "crtvss/curve/dss.hpp"
#include "crtvss/math/modmath.hpp"
#include "test_util.hpp"

namespace {

using namespace crtvss;
using crtvss::testing::Expect;
using crtvss::testing::ExpectError;
using crtvss::testing::RunCase;

// Brute-force enumeration of the toy curve group, independent of the
// group-law implementation under test.
std::vector<CurvePoint> EnumerateToyGroup() {
  const CurveParams& curve = ToyCurve();
  std::vector<CurvePoint> points = {CurvePoint::Identity()};
  for (mpz_class x = 0; x < curve.p; ++x) {
    for (mpz_class y = 0; y < curve.p; ++y) {
      const CurvePoint candidate = CurvePoint::Affine(x, y);
      if (IsOnCurve(candidate, curve)) {
        points.push_back(candidate);
      }
    }
  }
  return points;
}

// Repeated addition, the slow oracle for ScalarMul.
CurvePoint SlowMul(unsigned k, const CurvePoint& point, const CurveParams& curve) {
  CurvePoint acc = CurvePoint::Identity();
  for (unsigned i = 0; i < k; ++i) {
    acc = PointAdd(acc, point, curve);
  }
  return acc;
}

void TestGroupEnumeration() {
  const std::vector<CurvePoint> points = EnumerateToyGroup();
  Expect(points.size() == 19, "toy curve group has 19 elements");
  const CurveParams& curve = ToyCurve();
  // ord(G) = 19: brute-force check.
  CurvePoint acc = CurvePoint::Identity();
  unsigned order = 0;
  for (unsigned i = 1; i <= 19; ++i) {
    acc = PointAdd(acc, curve.base, curve);
    if (acc.is_identity) {
      order = i;
      break;
    }
  }
  Expect(order == 19, "base point has order 19");
}

void TestPointAddFixtures() {
  const CurveParams& curve = ToyCurve();
  Expect(PointAdd(curve.base, CurvePoint::Identity(), curve) == curve.base, "G + O = G");
  Expect(PointAdd(curve.base, curve.base, curve) == CurvePoint::Affine(6, 3),
         "(5,1) + (5,1) = (6,3)");
  Expect(PointAdd(curve.base, CurvePoint::Affine(5, 16), curve).is_identity,
         "(5,1) + (5,16) = O");
  ExpectError(ErrorCode::kPointNotOnCurve,
              [&] { PointAdd(curve.base, CurvePoint::Affine(4, 4), curve); },
              "point off the curve rejected");
}

void TestScalarMulFixtures() {
  const CurveParams& curve = ToyCurve();
  Expect(ScalarMul(0, curve.base, curve).is_identity, "0 * G = O");
  Expect(ScalarMul(19, curve.base, curve).is_identity, "19 * G = O");
  Expect(ScalarMul(2, curve.base, curve) == CurvePoint::Affine(6, 3), "2 * G = (6,3)");
  for (unsigned k = 0; k < 40; ++k) {
    Expect(ScalarMul(k, curve.base, curve) == SlowMul(k % 19, curve.base, curve),
           "double-and-add matches repeated addition at k = " + std::to_string(k));
  }
}

void TestGroupLawsExhaustive() {
  const CurveParams& curve = ToyCurve();
  const std::vector<CurvePoint> points = EnumerateToyGroup();
  for (const CurvePoint& p : points) {
    Expect(PointAdd(p, PointNegate(p, curve), curve).is_identity, "P + (-P) = O");
    for (const CurvePoint& q : points) {
      Expect(PointAdd(p, q, curve) == PointAdd(q, p, curve), "commutativity");
      for (const CurvePoint& r : points) {
        Expect(PointAdd(PointAdd(p, q, curve), r, curve) ==
                   PointAdd(p, PointAdd(q, r, curve), curve),
               "associativity");
      }
    }
  }
}

void TestDssSignFixture() {
  const CurveParams& curve = ToyCurve();
  // d=7, k=5, m=11: k^-1 = 4 mod 19, 4G = (3,1), r = 3, s = 5*(11+21) mod 19 = 8.
  Expect(ModInverse(5, 19) == 4, "5^-1 mod 19");
  Expect(ScalarMul(4, curve.base, curve) == CurvePoint::Affine(3, 1), "4G = (3,1)");
  const DssSignature sig = DssSignCentral(7, 5, 11, curve);
  Expect(sig.r == 3 && sig.s == 8, "fixture signature (3, 8)");

  const DssSignature again = DssSignCentral(7, 5, 11, curve);
  Expect(again.r == sig.r && again.s == sig.s, "deterministic for fixed nonce");

  ExpectError(ErrorCode::kNonInvertibleKA, [&] { DssSignCentral(7, 19, 11, curve); },
              "k = 0 mod q rejected");
}

void TestDssVerify() {
  const CurveParams& curve = ToyCurve();
  const CurvePoint public_key = ScalarMul(7, curve.base, curve);
  const DssSignature sig = DssSignCentral(7, 5, 11, curve);
  Expect(DssVerify(public_key, 11, sig, curve), "signature round trip");

  DssSignature bumped = sig;
  bumped.s = (bumped.s + 1) % 19;
  Expect(!DssVerify(public_key, 11, bumped, curve), "s + 1 fails");
  DssSignature zeroed{0, sig.s};
  Expect(!DssVerify(public_key, 11, zeroed, curve), "r = 0 rejected");
  Expect(!DssVerify(public_key, 12, sig, curve), "wrong digest fails");

  // Crafted X = O: m = -r*d mod q makes u1*G + u2*Q collapse.
  const mpz_class crafted_m = NormalizeMod(mpz_class(-3 * 7), curve.order);
  Expect(!DssVerify(public_key, crafted_m, DssSignature{3, 5}, curve),
         "X = O declared a fault signature");
}

// Every (d, k, m) with nonzero r, s: sign then verify; also the
// verification point equals k^-1 * G.
void TestDssExhaustiveSelfConsistency() {
  const CurveParams& curve = ToyCurve();
  unsigned checked = 0;
  for (mpz_class d = 1; d < 19; ++d) {
    const CurvePoint public_key = ScalarMul(d, curve.base, curve);
    for (mpz_class k = 1; k < 19; ++k) {
      for (mpz_class m = 0; m < 19; ++m) {
        DssSignature sig;
        try {
          sig = DssSignCentral(d, k, m, curve);
        } catch (const Error& err) {
          Expect(err.code() == ErrorCode::kZeroR || err.code() == ErrorCode::kZeroS,
                 "only degenerate r/s may fail");
          continue;
        }
        Expect(DssVerify(public_key, m, sig, curve), "sign-verify always true");
        const CurvePoint expected = ScalarMul(ModInverse(k, curve.order), curve.base, curve);
        Expect(NormalizeMod(expected.x, curve.order) == sig.r,
               "x(X) equals x(k^-1 G) mod q");
        ++checked;
      }
    }
  }
  Expect(checked > 5000, "exhaustive sweep actually ran");
}

void TestPointSerialization() {
  Expect(PointToString(CurvePoint::Identity()) == "O", "identity encodes as O");
  Expect(PointToString(CurvePoint::Affine(5, 1)) == "5,1", "affine encoding");
  Expect(PointFromString("5,1") == CurvePoint::Affine(5, 1), "round trip");
  Expect(PointFromString("O").is_identity, "identity round trip");
}

}  // namespace

int main() {
  RunCase("group_enumeration", TestGroupEnumeration);
  RunCase("point_add_fixtures", TestPointAddFixtures);
  RunCase("scalar_mul_fixtures", TestScalarMulFixtures);
  RunCase("group_laws_exhaustive", TestGroupLawsExhaustive);
  RunCase("dss_sign_fixture", TestDssSignFixture);
  RunCase("dss_verify", TestDssVerify);
  RunCase("dss_exhaustive_self_consistency", TestDssExhaustiveSelfConsistency);
  RunCase("point_serialization", TestPointSerialization);
  return crtvss::testing::Summary("curve_tests");
}
