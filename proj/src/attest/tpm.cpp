#include "crtvss/attest/tpm.hpp"

#include <algorithm>

#include "crtvss/common/error.hpp"
#include "crtvss/common/hex.hpp"

namespace crtvss {
namespace {

std::string U64Hex(uint64_t value) {
  char buffer[17];
  snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
  return std::string(buffer);
}

std::string DaaTag(const TpmState& tpm, const std::string& im_hex) {
  return DigestToHex(Sha1::Hash("DAA|" + U64Hex(tpm.daa_secret) + "|" + im_hex));
}

std::string PbaTag(const TpmState& tpm, const std::string& im_hex,
                   const std::string& config_digest_hex) {
  return DigestToHex(
      Sha1::Hash("PBA|" + U64Hex(tpm.pba_secret) + "|" + im_hex + "|" + config_digest_hex));
}

std::string AikTag(const TpmState& tpm, const std::string& payload) {
  return DigestToHex(Sha1::Hash("AIK|" + U64Hex(tpm.aik_secret) + "|" + payload));
}

}  // namespace

TpmState MakeTpm(SeededRng& rng, const std::string& config_value) {
  TpmState tpm;
  tpm.aik_secret = rng.NextU64();
  tpm.daa_secret = rng.NextU64();
  tpm.pba_secret = rng.NextU64();
  tpm.config_value = config_value;
  return tpm;
}

Sha1Digest PcrExtend(TpmState& tpm, size_t slot, const std::string& measurement) {
  if (slot >= tpm.pcrs.size()) {
    throw Error(ErrorCode::kBadSlot, "PCR slot " + std::to_string(slot));
  }
  Sha1 hasher;
  hasher.Update(std::span<const uint8_t>(tpm.pcrs[slot].data(), tpm.pcrs[slot].size()));
  hasher.Update(measurement);
  tpm.pcrs[slot] = hasher.Finish();
  return tpm.pcrs[slot];
}

Sha1Digest PcrComposite(const TpmState& tpm) {
  Sha1 hasher;
  for (const Sha1Digest& pcr : tpm.pcrs) {
    hasher.Update(std::span<const uint8_t>(pcr.data(), pcr.size()));
  }
  return hasher.Finish();
}

DaaSignature DaaSign(const TpmState& tpm, sim::NodeId self, const std::string& im_hex) {
  if (!tpm.has_daa_credential) {
    throw Error(ErrorCode::kNoCredential, "platform holds no DAA credential");
  }
  return DaaSignature{self, im_hex, DaaTag(tpm, im_hex)};
}

PbaSignature PbaSign(const TpmState& tpm, sim::NodeId self, const std::string& im_hex,
                     const std::vector<std::string>& config_set) {
  if (config_set.empty()) {
    throw Error(ErrorCode::kEmptyConfigSet, "agreed config set is empty");
  }
  const std::string config_digest = DigestToHex(Sha1::Hash("cfg|" + tpm.config_value));
  return PbaSignature{self, im_hex, config_digest, PbaTag(tpm, im_hex, config_digest)};
}

AikSignature AikSign(const TpmState& tpm, sim::NodeId self, const std::string& payload) {
  return AikSignature{self, AikTag(tpm, payload)};
}

void Authority::Register(sim::NodeId id, const TpmState* tpm) { tpms_[id] = tpm; }

const TpmState* Authority::Find(sim::NodeId id) const {
  const auto it = tpms_.find(id);
  return it == tpms_.end() ? nullptr : it->second;
}

bool Authority::DaaVerify(const DaaSignature& ds, const std::string& im_hex) const {
  const TpmState* tpm = Find(ds.signer);
  if (tpm == nullptr || tpm->compromised || !tpm->has_daa_credential) {
    return false;
  }
  if (ds.im_hex != im_hex) {
    return false;
  }
  return ds.tag_hex == DaaTag(*tpm, im_hex);
}

bool Authority::PbaVerify(const PbaSignature& ps, const std::string& im_hex,
                          const std::vector<std::string>& config_set) const {
  const TpmState* tpm = Find(ps.signer);
  if (tpm == nullptr || ps.im_hex != im_hex) {
    return false;
  }
  if (ps.tag_hex != PbaTag(*tpm, im_hex, ps.config_digest_hex)) {
    return false;
  }
  return std::any_of(config_set.begin(), config_set.end(), [&](const std::string& cs) {
    return DigestToHex(Sha1::Hash("cfg|" + cs)) == ps.config_digest_hex;
  });
}

bool Authority::AikVerify(const AikSignature& sig, const std::string& payload) const {
  const TpmState* tpm = Find(sig.signer);
  if (tpm == nullptr) {
    return false;
  }
  return sig.tag_hex == AikTag(*tpm, payload);
}

std::string Authority::QuoteIm(sim::NodeId id, const std::string& n1_hex) const {
  const TpmState* tpm = Find(id);
  if (tpm == nullptr) {
    return "";
  }
  return ComputeIm(id, n1_hex, *tpm);
}

std::string ComputeIm(sim::NodeId id, const std::string& n1_hex, const TpmState& tpm) {
  return DigestToHex(
      Sha1::Hash(std::to_string(id) + "|" + n1_hex + "|" + DigestToHex(PcrComposite(tpm))));
}

}  // namespace crtvss
