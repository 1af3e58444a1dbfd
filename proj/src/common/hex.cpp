#include "crtvss/common/hex.hpp"

#include <stdexcept>

#include "crtvss/common/error.hpp"

namespace crtvss {
namespace {

int NibbleValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string MpzToHex(const mpz_class& value) {
  if (value < 0) {
    throw Error(ErrorCode::kIoError, "negative integer has no hex encoding");
  }
  return value.get_str(16);
}

mpz_class MpzFromHex(const std::string& hex) {
  if (hex.empty()) {
    throw Error(ErrorCode::kIoError, "empty hex integer");
  }
  for (char c : hex) {
    if (NibbleValue(c) < 0) {
      throw Error(ErrorCode::kIoError, "invalid hex digit in integer");
    }
  }
  mpz_class out;
  if (out.set_str(hex, 16) != 0) {
    throw Error(ErrorCode::kIoError, "unparsable hex integer");
  }
  return out;
}

std::string BytesToHex(std::span<const uint8_t> bytes) {
  static const char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

std::vector<uint8_t> BytesFromHex(const std::string& hex) {
  if (hex.size() % 2 != 0) {
    throw Error(ErrorCode::kIoError, "odd-length hex byte string");
  }
  std::vector<uint8_t> out;
  out.reserve(hex.size() / 2);
  for (size_t i = 0; i < hex.size(); i += 2) {
    const int hi = NibbleValue(hex[i]);
    const int lo = NibbleValue(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::kIoError, "invalid hex digit in byte string");
    }
    out.push_back(static_cast<uint8_t>((hi << 4) | lo));
  }
  return out;
}

}  // namespace crtvss
