#pragma once

#include <string>

#include <gmpxx.h>

namespace crtvss {

// Affine point on a short-Weierstrass curve, or the identity O.
struct CurvePoint {
  bool is_identity = true;
  mpz_class x;
  mpz_class y;

  static CurvePoint Identity() { return CurvePoint{}; }
  static CurvePoint Affine(mpz_class x, mpz_class y) {
    return CurvePoint{false, std::move(x), std::move(y)};
  }

  bool operator==(const CurvePoint& other) const {
    if (is_identity || other.is_identity) {
      return is_identity == other.is_identity;
    }
    return x == other.x && y == other.y;
  }
};

// y^2 = x^3 + a*x + b over F_p, with a base point of prime order q.
// All protocol scalars are taken modulo q.
struct CurveParams {
  mpz_class p;
  mpz_class a;
  mpz_class b;
  CurvePoint base;
  mpz_class order;  // q = ord(base)
};

// The 19-element test curve y^2 = x^3 + 2x + 2 over F_17, G = (5, 1).
// Small enough for exhaustive checks of every protocol claim.
const CurveParams& ToyCurve();

// Checks the discriminant, the base point and q * G = O.
void ValidateCurveParams(const CurveParams& params);

bool IsOnCurve(const CurvePoint& point, const CurveParams& params);

// Group law. Throws Error(kPointNotOnCurve) on invalid operands.
CurvePoint PointAdd(const CurvePoint& lhs, const CurvePoint& rhs, const CurveParams& params);

CurvePoint PointNegate(const CurvePoint& point, const CurveParams& params);

// Double-and-add; k is reduced modulo the group order first.
CurvePoint ScalarMul(const mpz_class& k, const CurvePoint& point, const CurveParams& params);

// "O" or lowercase-hex "x,y"; used in transcripts and signature files.
std::string PointToString(const CurvePoint& point);
CurvePoint PointFromString(const std::string& text);

}  // namespace crtvss
