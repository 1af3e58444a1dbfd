#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace crtvss {

// Integers travel between files and languages as lowercase hex with no
// leading zeros ("0" for zero). Negative values are not representable.
std::string MpzToHex(const mpz_class& value);
mpz_class MpzFromHex(const std::string& hex);

std::string BytesToHex(std::span<const uint8_t> bytes);
std::vector<uint8_t> BytesFromHex(const std::string& hex);

}  // namespace crtvss
