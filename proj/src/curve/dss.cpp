#include "crtvss/curve/dss.hpp"

#include "crtvss/common/error.hpp"
#include "crtvss/common/hex.hpp"
#include "crtvss/crypto/sha1.hpp"
#include "crtvss/math/modmath.hpp"

namespace crtvss {

DssSignature DssSignCentral(const mpz_class& d, const mpz_class& k, const mpz_class& msg_digest,
                            const CurveParams& params) {
  const mpz_class& q = params.order;
  const mpz_class d_mod = NormalizeMod(d, q);
  const mpz_class k_mod = NormalizeMod(k, q);
  const mpz_class m_mod = NormalizeMod(msg_digest, q);
  if (k_mod == 0) {
    throw Error(ErrorCode::kNonInvertibleKA, "nonce is a multiple of the group order");
  }

  const CurvePoint nonce_point = ScalarMul(ModInverse(k_mod, q), params.base, params);
  if (nonce_point.is_identity) {
    throw Error(ErrorCode::kZeroR, "nonce point is the identity");
  }
  const mpz_class r = NormalizeMod(nonce_point.x, q);
  if (r == 0) {
    throw Error(ErrorCode::kZeroR, "r vanished, resample the nonce");
  }
  const mpz_class s = MulMod(k_mod, m_mod + MulMod(r, d_mod, q), q);
  if (s == 0) {
    throw Error(ErrorCode::kZeroS, "s vanished, resample the nonce");
  }
  return DssSignature{r, s};
}

bool DssVerify(const CurvePoint& public_key, const mpz_class& msg_digest,
               const DssSignature& sig, const CurveParams& params) {
  const mpz_class& q = params.order;
  if (sig.r < 1 || sig.r >= q || sig.s < 1 || sig.s >= q) {
    return false;
  }
  if (!IsOnCurve(public_key, params)) {
    return false;
  }
  const mpz_class w = ModInverse(sig.s, q);  // q prime, s in [1, q) is invertible
  const mpz_class u1 = MulMod(NormalizeMod(msg_digest, q), w, q);
  const mpz_class u2 = MulMod(sig.r, w, q);
  const CurvePoint x_point = PointAdd(ScalarMul(u1, params.base, params),
                                      ScalarMul(u2, public_key, params), params);
  if (x_point.is_identity) {
    return false;  // declared a fault signature
  }
  return NormalizeMod(x_point.x, q) == sig.r;
}

mpz_class MessageDigestScalar(const std::string& message, const CurveParams& params) {
  const Sha1Digest digest = Sha1::Hash(message);
  mpz_class value;
  value.set_str(BytesToHex(digest), 16);
  return NormalizeMod(value, params.order);
}

}  // namespace crtvss
