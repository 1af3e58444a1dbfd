#include "crtvss/crypto/sha1.hpp"

#include <cstring>

#include "crtvss/common/hex.hpp"

namespace crtvss {
namespace {

inline uint32_t Rotl(uint32_t value, int shift) {
  return (value << shift) | (value >> (32 - shift));
}

}  // namespace

Sha1::Sha1()
    : state_{0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u, 0xC3D2E1F0u},
      buffer_{},
      total_bytes_(0),
      buffered_(0) {}

void Sha1::Update(std::span<const uint8_t> data) {
  total_bytes_ += data.size();
  size_t offset = 0;
  while (offset < data.size()) {
    const size_t take = std::min(data.size() - offset, buffer_.size() - buffered_);
    std::memcpy(buffer_.data() + buffered_, data.data() + offset, take);
    buffered_ += take;
    offset += take;
    if (buffered_ == buffer_.size()) {
      ProcessBlock(buffer_.data());
      buffered_ = 0;
    }
  }
}

void Sha1::Update(const std::string& data) {
  Update(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

Sha1Digest Sha1::Finish() {
  const uint64_t bit_length = total_bytes_ * 8;

  const uint8_t pad = 0x80;
  Update(std::span<const uint8_t>(&pad, 1));
  const uint8_t zero = 0x00;
  while (buffered_ != 56) {
    Update(std::span<const uint8_t>(&zero, 1));
  }

  std::array<uint8_t, 8> length_be;
  for (int i = 0; i < 8; ++i) {
    length_be[i] = static_cast<uint8_t>(bit_length >> (56 - 8 * i));
  }
  Update(length_be);

  Sha1Digest out;
  for (int i = 0; i < 5; ++i) {
    out[4 * i + 0] = static_cast<uint8_t>(state_[i] >> 24);
    out[4 * i + 1] = static_cast<uint8_t>(state_[i] >> 16);
    out[4 * i + 2] = static_cast<uint8_t>(state_[i] >> 8);
    out[4 * i + 3] = static_cast<uint8_t>(state_[i]);
  }
  return out;
}

void Sha1::ProcessBlock(const uint8_t* block) {
  uint32_t w[80];
  for (int i = 0; i < 16; ++i) {
    w[i] = (static_cast<uint32_t>(block[4 * i]) << 24) |
           (static_cast<uint32_t>(block[4 * i + 1]) << 16) |
           (static_cast<uint32_t>(block[4 * i + 2]) << 8) |
           static_cast<uint32_t>(block[4 * i + 3]);
  }
  for (int i = 16; i < 80; ++i) {
    w[i] = Rotl(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
  }

  uint32_t a = state_[0];
  uint32_t b = state_[1];
  uint32_t c = state_[2];
  uint32_t d = state_[3];
  uint32_t e = state_[4];

  for (int i = 0; i < 80; ++i) {
    uint32_t f;
    uint32_t k;
    if (i < 20) {
      f = (b & c) | (~b & d);
      k = 0x5A827999u;
    } else if (i < 40) {
      f = b ^ c ^ d;
      k = 0x6ED9EBA1u;
    } else if (i < 60) {
      f = (b & c) | (b & d) | (c & d);
      k = 0x8F1BBCDCu;
    } else {
      f = b ^ c ^ d;
      k = 0xCA62C1D6u;
    }
    const uint32_t tmp = Rotl(a, 5) + f + e + k + w[i];
    e = d;
    d = c;
    c = Rotl(b, 30);
    b = a;
    a = tmp;
  }

  state_[0] += a;
  state_[1] += b;
  state_[2] += c;
  state_[3] += d;
  state_[4] += e;
}

Sha1Digest Sha1::Hash(std::span<const uint8_t> data) {
  Sha1 hasher;
  hasher.Update(data);
  return hasher.Finish();
}

Sha1Digest Sha1::Hash(const std::string& data) {
  Sha1 hasher;
  hasher.Update(data);
  return hasher.Finish();
}

std::string DigestToHex(const Sha1Digest& digest) {
  return BytesToHex(std::span<const uint8_t>(digest.data(), digest.size()));
}

}  // namespace crtvss
