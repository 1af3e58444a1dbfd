#include "crtvss/math/params_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "crtvss/common/error.hpp"
#include "crtvss/common/hex.hpp"
#include "crtvss/crypto/sha1.hpp"

namespace crtvss {
namespace {

using nlohmann::ordered_json;

}  // namespace

std::string AbParamsToJson(const AbParams& params, bool pretty) {
  ordered_json doc;
  doc["version"] = 1;
  doc["m0"] = MpzToHex(params.m0);
  doc["moduli"] = ordered_json::array();
  for (const mpz_class& m : params.moduli) {
    doc["moduli"].push_back(MpzToHex(m));
  }
  doc["verif_primes"] = ordered_json::array();
  for (const mpz_class& p : params.verif_primes) {
    doc["verif_primes"].push_back(MpzToHex(p));
  }
  doc["t"] = params.t;
  doc["n"] = params.n;
  return pretty ? doc.dump(2) + "\n" : doc.dump();
}

AbParams AbParamsFromJson(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::kIoError, std::string("bad params JSON: ") + ex.what());
  }
  try {
    AbParams params;
    params.m0 = MpzFromHex(doc.at("m0").get<std::string>());
    for (const auto& entry : doc.at("moduli")) {
      params.moduli.push_back(MpzFromHex(entry.get<std::string>()));
    }
    for (const auto& entry : doc.at("verif_primes")) {
      params.verif_primes.push_back(MpzFromHex(entry.get<std::string>()));
    }
    params.t = doc.at("t").get<size_t>();
    params.n = doc.at("n").get<size_t>();
    params.capacity = 1;
    for (size_t i = 0; i < params.t && i < params.moduli.size(); ++i) {
      params.capacity *= params.moduli[i];
    }
    ValidateAbParams(params);
    return params;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::kIoError, std::string("bad params JSON: ") + ex.what());
  }
}

void WriteAbParamsFile(const AbParams& params, const std::string& path, bool pretty) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot open " + path + " for writing");
  }
  out << AbParamsToJson(params, pretty);
}

AbParams ReadAbParamsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return AbParamsFromJson(buffer.str());
}

std::string AbParamsDigest(const AbParams& params) {
  std::string canon = "m0=" + MpzToHex(params.m0) + ";moduli=";
  for (const mpz_class& m : params.moduli) {
    canon += MpzToHex(m) + ",";
  }
  canon += ";t=" + std::to_string(params.t) + ";n=" + std::to_string(params.n);
  return DigestToHex(Sha1::Hash(canon));
}

}  // namespace crtvss
