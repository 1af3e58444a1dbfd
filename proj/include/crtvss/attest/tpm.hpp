#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crtvss/common/rng.hpp"
#include "crtvss/crypto/sha1.hpp"
#include "crtvss/sim/envelope.hpp"

namespace crtvss {

// Simulated trusted-platform state. Keys are plain secrets; signatures
// are keyed digests; the Authority below plays the role of the TPM
// manufacturer / DAA issuer that verifiers consult. The `compromised`
// flag is simulation control: it flips DAA verification to false,
// modelling revocation of a broken platform.
struct TpmState {
  std::array<Sha1Digest, 16> pcrs{};
  uint64_t aik_secret = 0;
  uint64_t daa_secret = 0;
  bool has_daa_credential = true;
  uint64_t pba_secret = 0;
  std::string config_value;
  bool compromised = false;
};

TpmState MakeTpm(SeededRng& rng, const std::string& config_value);

// PCR_new = SHA-1(PCR_old || measurement); order-sensitive by
// construction. Returns the new slot value. Throws Error(kBadSlot).
Sha1Digest PcrExtend(TpmState& tpm, size_t slot, const std::string& measurement);

// Digest over all 16 slots, the quote the integrity measurement binds.
Sha1Digest PcrComposite(const TpmState& tpm);

struct DaaSignature {
  sim::NodeId signer = 0;
  std::string im_hex;
  std::string tag_hex;
};

struct PbaSignature {
  sim::NodeId signer = 0;
  std::string im_hex;
  std::string config_digest_hex;  // SHA-1 of the config value at signing time
  std::string tag_hex;
};

struct AikSignature {
  sim::NodeId signer = 0;
  std::string tag_hex;
};

DaaSignature DaaSign(const TpmState& tpm, sim::NodeId self, const std::string& im_hex);
PbaSignature PbaSign(const TpmState& tpm, sim::NodeId self, const std::string& im_hex,
                     const std::vector<std::string>& config_set);
AikSignature AikSign(const TpmState& tpm, sim::NodeId self, const std::string& payload);

// Verification registry. Nodes register their TPMs once; the verify
// predicates recompute tags from the registered secrets and consult the
// compromise flag, which is exactly what the netsim attacks target.
class Authority {
 public:
  void Register(sim::NodeId id, const TpmState* tpm);
  const TpmState* Find(sim::NodeId id) const;

  // False when the tag does not bind im, the credential is missing, or
  // the platform is flagged compromised at verification time.
  bool DaaVerify(const DaaSignature& ds, const std::string& im_hex) const;

  // True iff the tag is authentic and the config value signed over is a
  // member of the config set supplied now. The config value itself never
  // appears in the signature, only its digest.
  bool PbaVerify(const PbaSignature& ps, const std::string& im_hex,
                 const std::vector<std::string>& config_set) const;

  bool AikVerify(const AikSignature& sig, const std::string& payload) const;

  // im = SHA-1(id || n1 || PCR) recomputed from the registered platform.
  std::string QuoteIm(sim::NodeId id, const std::string& n1_hex) const;

 private:
  std::map<sim::NodeId, const TpmState*> tpms_;
};

// im for the initiator side, computed from its own TPM.
std::string ComputeIm(sim::NodeId id, const std::string& n1_hex, const TpmState& tpm);

}  // namespace crtvss
