#pragma once

#include <string>

#include "crtvss/math/ab_params.hpp"

namespace crtvss {

// Parameter fixture files: {version, m0, moduli[], verif_primes[], t, n}
// with every integer as lowercase hex. Loading re-validates the set.
std::string AbParamsToJson(const AbParams& params, bool pretty = false);
AbParams AbParamsFromJson(const std::string& text);

void WriteAbParamsFile(const AbParams& params, const std::string& path, bool pretty = true);
AbParams ReadAbParamsFile(const std::string& path);

// SHA-1 over the canonical parameter encoding; bulletin boards and
// signature outputs carry it so consumers can pin the modulus system.
std::string AbParamsDigest(const AbParams& params);

}  // namespace crtvss
