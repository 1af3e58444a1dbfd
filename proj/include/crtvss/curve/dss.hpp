#pragma once

#include <string>

#include <gmpxx.h>

#include "crtvss/curve/curve.hpp"

namespace crtvss {

struct DssSignature {
  mpz_class r;
  mpz_class s;
};

// The DSS variant the distributed protocol implements, collapsed to a
// single signer:
//   r = x(k^-1 * G) mod q,   s = k * (m + r*d) mod q.
// Serves as the correctness oracle for the threshold sessions. Throws
// Error(kZeroR) / Error(kZeroS) when the nonce produces a degenerate
// signature; callers resample k.
DssSignature DssSignCentral(const mpz_class& d, const mpz_class& k, const mpz_class& msg_digest,
                            const CurveParams& params);

// w = s^-1, u1 = m*w, u2 = r*w, X = u1*G + u2*Q; reject X = O, accept
// iff x(X) mod q = r. Malformed inputs return false, never throw.
bool DssVerify(const CurvePoint& public_key, const mpz_class& msg_digest,
               const DssSignature& sig, const CurveParams& params);

// m = SHA-1(message) reduced modulo the group order.
mpz_class MessageDigestScalar(const std::string& message, const CurveParams& params);

}  // namespace crtvss
