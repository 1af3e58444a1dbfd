#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "crtvss/attest/lists.hpp"
#include "crtvss/attest/tpm.hpp"
#include "crtvss/common/rng.hpp"
#include "crtvss/sim/envelope.hpp"

namespace crtvss {

// Diffie-Hellman group for K_INFO. The default is a 64-bit safe prime
// with g = 4 generating the prime-order subgroup; the protocol, not the
// group size, is what the simulation tests.
struct DhGroup {
  mpz_class p;
  mpz_class g;
  mpz_class subgroup_order;  // (p - 1) / 2
};

const DhGroup& DefaultDhGroup();

enum class AuthState { kIdle, kInitSent, kChallenged, kAttested, kKeyed, kDone, kFailed };

const char* AuthStateName(AuthState state);

// One run of the 5-message framework, from either side.
struct AuthSession {
  bool is_initiator = false;
  sim::NodeId self = 0;
  sim::NodeId peer = 0;
  AuthState state = AuthState::kIdle;
  mpz_class n1;
  mpz_class n2;
  mpz_class dh_exponent;     // own x or y
  mpz_class dh_public_peer;
  mpz_class session_key;
  bool have_key = false;
};

// What message 3 transports: the integrity measurement, both platform
// signatures, and the optional DH public part.
struct AttestationBundle {
  std::string im_hex;
  DaaSignature ds;
  PbaSignature ps;
  std::optional<mpz_class> dh_public;
};

struct AuthNode {
  sim::NodeId id = 0;
  TpmState tpm;
  TrustLists lists;
  std::vector<std::string> config_set;
  // Keyed by (peer, acting-as-initiator); reconstruction runs both roles
  // with the same peer concurrently.
  std::map<std::pair<sim::NodeId, bool>, AuthSession> sessions;
};

AuthSession* FindSession(AuthNode& node, sim::NodeId peer, bool is_initiator);

// im = SHA-1(id || n1 || PCR), DS = DAASign(im), PS = PBASign(im, CS),
// plus the caller's fresh DH public part when one is needed. Throws
// Error(kNoCredential) or Error(kEmptyConfigSet) when the platform
// cannot attest.
AttestationBundle BuildAttestationBundle(const AuthNode& node, const mpz_class& n1,
                                         const std::optional<mpz_class>& dh_public);

// The responder-side judgement: im recomputed through the registry
// matches, the DAA signature is live (not revoked) and the PBA signature
// places the signer's configuration inside the agreed set.
bool VerifyAttestationBundle(const AttestationBundle& bundle, sim::NodeId claimed_sender,
                             const mpz_class& n1, const std::vector<std::string>& config_set,
                             const Authority& authority);

// Message 1. Creates (or restarts) the initiator session with this peer.
sim::Envelope AuthStart(AuthNode& node, sim::NodeId peer, SeededRng& rng);

// Drives the node's state machines with one incoming envelope. Returns
// the replies, possibly none: unknown neighbors, malformed payloads and
// digest mismatches are dropped without any reply; attestation failures
// mark T[peer] = -1 and stay silent, exactly as the framework requires.
std::vector<sim::Envelope> AuthStep(AuthNode& node, const sim::Envelope& incoming,
                                    const Authority& authority, const DhGroup& group,
                                    SeededRng& rng);

}  // namespace crtvss
