#include "crtvss/vss/share_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "crtvss/common/error.hpp"
#include "crtvss/common/hex.hpp"
#include "crtvss/math/params_io.hpp"

namespace crtvss {
namespace {

using nlohmann::ordered_json;

std::string ModeName(DealingMode mode) {
  return mode == DealingMode::kMasked ? "masked" : "direct";
}

DealingMode ModeFromName(const std::string& name) {
  if (name == "masked") return DealingMode::kMasked;
  if (name == "direct") return DealingMode::kDirect;
  throw Error(ErrorCode::kIoError, "unknown dealing mode " + name);
}

std::string SlurpFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void SpillFile(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot open " + path + " for writing");
  }
  out << text;
}

ordered_json CommitmentToJson(const Commitment& commitment) {
  ordered_json doc;
  doc["index"] = commitment.index;
  doc["p"] = MpzToHex(commitment.p);
  doc["g"] = MpzToHex(commitment.g);
  doc["z"] = MpzToHex(commitment.z);
  return doc;
}

Commitment CommitmentFromJson(const ordered_json& doc) {
  Commitment commitment;
  commitment.index = doc.at("index").get<size_t>();
  commitment.p = MpzFromHex(doc.at("p").get<std::string>());
  commitment.g = MpzFromHex(doc.at("g").get<std::string>());
  commitment.z = MpzFromHex(doc.at("z").get<std::string>());
  return commitment;
}

}  // namespace

std::string ShareFileToJson(const ShareFile& file, bool pretty) {
  ordered_json doc;
  doc["version"] = 1;
  doc["index"] = file.share.index;
  doc["modulus"] = MpzToHex(file.share.modulus);
  doc["value"] = MpzToHex(file.share.value);
  doc["commitment"] = CommitmentToJson(file.commitment);
  doc["mode"] = ModeName(file.mode);
  return pretty ? doc.dump(2) + "\n" : doc.dump();
}

ShareFile ShareFileFromJson(const std::string& text) {
  try {
    const ordered_json doc = ordered_json::parse(text);
    ShareFile file;
    file.share.index = doc.at("index").get<size_t>();
    file.share.modulus = MpzFromHex(doc.at("modulus").get<std::string>());
    file.share.value = MpzFromHex(doc.at("value").get<std::string>());
    file.commitment = CommitmentFromJson(doc.at("commitment"));
    file.mode = ModeFromName(doc.at("mode").get<std::string>());
    return file;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::kIoError, std::string("bad share JSON: ") + ex.what());
  }
}

void WriteShareFile(const ShareFile& file, const std::string& path) {
  SpillFile(ShareFileToJson(file, /*pretty=*/true), path);
}

ShareFile ReadShareFile(const std::string& path) {
  return ShareFileFromJson(SlurpFile(path));
}

Bulletin MakeBulletin(const Dealing& dealing) {
  Bulletin bulletin;
  bulletin.params_digest = AbParamsDigest(dealing.params);
  bulletin.commitments = dealing.commitments;
  return bulletin;
}

std::string BulletinToJson(const Bulletin& bulletin, bool pretty) {
  ordered_json doc;
  doc["version"] = 1;
  doc["params_digest"] = bulletin.params_digest;
  doc["commitments"] = ordered_json::array();
  for (const Commitment& commitment : bulletin.commitments) {
    doc["commitments"].push_back(CommitmentToJson(commitment));
  }
  return pretty ? doc.dump(2) + "\n" : doc.dump();
}

Bulletin BulletinFromJson(const std::string& text) {
  try {
    const ordered_json doc = ordered_json::parse(text);
    Bulletin bulletin;
    bulletin.params_digest = doc.at("params_digest").get<std::string>();
    for (const auto& entry : doc.at("commitments")) {
      bulletin.commitments.push_back(CommitmentFromJson(entry));
    }
    return bulletin;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::kIoError, std::string("bad bulletin JSON: ") + ex.what());
  }
}

void WriteBulletinFile(const Bulletin& bulletin, const std::string& path) {
  SpillFile(BulletinToJson(bulletin, /*pretty=*/true), path);
}

Bulletin ReadBulletinFile(const std::string& path) {
  return BulletinFromJson(SlurpFile(path));
}

}  // namespace crtvss
