#include "crtvss/curve/curve.hpp"

#include "crtvss/common/error.hpp"
#include "crtvss/common/hex.hpp"
#include "crtvss/math/modmath.hpp"

namespace crtvss {

const CurveParams& ToyCurve() {
  static const CurveParams kToy = [] {
    CurveParams params;
    params.p = 17;
    params.a = 2;
    params.b = 2;
    params.base = CurvePoint::Affine(5, 1);
    params.order = 19;
    ValidateCurveParams(params);
    return params;
  }();
  return kToy;
}

void ValidateCurveParams(const CurveParams& params) {
  if (params.p < 5 || !IsProbablePrime(params.p)) {
    throw Error(ErrorCode::kBadParams, "field prime invalid");
  }
  const mpz_class discriminant =
      NormalizeMod(4 * params.a * params.a * params.a + 27 * params.b * params.b, params.p);
  if (discriminant == 0) {
    throw Error(ErrorCode::kBadParams, "singular curve");
  }
  if (params.base.is_identity || !IsOnCurve(params.base, params)) {
    throw Error(ErrorCode::kBadParams, "base point not on curve");
  }
  if (params.order < 2 || !IsProbablePrime(params.order)) {
    throw Error(ErrorCode::kBadParams, "base point order must be prime");
  }
  if (!ScalarMul(params.order, params.base, params).is_identity) {
    throw Error(ErrorCode::kBadParams, "order * base != O");
  }
}

bool IsOnCurve(const CurvePoint& point, const CurveParams& params) {
  if (point.is_identity) {
    return true;
  }
  if (point.x < 0 || point.x >= params.p || point.y < 0 || point.y >= params.p) {
    return false;
  }
  const mpz_class lhs = MulMod(point.y, point.y, params.p);
  const mpz_class rhs =
      NormalizeMod(point.x * point.x * point.x + params.a * point.x + params.b, params.p);
  return lhs == rhs;
}

CurvePoint PointAdd(const CurvePoint& lhs, const CurvePoint& rhs, const CurveParams& params) {
  if (!IsOnCurve(lhs, params) || !IsOnCurve(rhs, params)) {
    throw Error(ErrorCode::kPointNotOnCurve, "operand fails the curve equation");
  }
  if (lhs.is_identity) return rhs;
  if (rhs.is_identity) return lhs;

  if (lhs.x == rhs.x && NormalizeMod(lhs.y + rhs.y, params.p) == 0) {
    return CurvePoint::Identity();  // P + (-P)
  }

  mpz_class slope;
  if (lhs.x == rhs.x && lhs.y == rhs.y) {
    slope = MulMod(3 * lhs.x * lhs.x + params.a, ModInverse(2 * lhs.y, params.p), params.p);
  } else {
    slope = MulMod(rhs.y - lhs.y, ModInverse(NormalizeMod(rhs.x - lhs.x, params.p), params.p),
                   params.p);
  }
  const mpz_class x3 = NormalizeMod(slope * slope - lhs.x - rhs.x, params.p);
  const mpz_class y3 = NormalizeMod(slope * (lhs.x - x3) - lhs.y, params.p);
  return CurvePoint::Affine(x3, y3);
}

CurvePoint PointNegate(const CurvePoint& point, const CurveParams& params) {
  if (point.is_identity) {
    return point;
  }
  return CurvePoint::Affine(point.x, NormalizeMod(-point.y, params.p));
}

CurvePoint ScalarMul(const mpz_class& k, const CurvePoint& point, const CurveParams& params) {
  if (!IsOnCurve(point, params)) {
    throw Error(ErrorCode::kPointNotOnCurve, "scalar multiplication of invalid point");
  }
  mpz_class scalar = NormalizeMod(k, params.order);
  CurvePoint acc = CurvePoint::Identity();
  CurvePoint addend = point;
  while (scalar > 0) {
    if (mpz_odd_p(scalar.get_mpz_t())) {
      acc = PointAdd(acc, addend, params);
    }
    addend = PointAdd(addend, addend, params);
    scalar >>= 1;
  }
  return acc;
}

std::string PointToString(const CurvePoint& point) {
  if (point.is_identity) {
    return "O";
  }
  return MpzToHex(point.x) + "," + MpzToHex(point.y);
}

CurvePoint PointFromString(const std::string& text) {
  if (text == "O") {
    return CurvePoint::Identity();
  }
  const size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorCode::kIoError, "point encoding needs \"x,y\" or \"O\"");
  }
  return CurvePoint::Affine(MpzFromHex(text.substr(0, comma)), MpzFromHex(text.substr(comma + 1)));
}

}  // namespace crtvss
