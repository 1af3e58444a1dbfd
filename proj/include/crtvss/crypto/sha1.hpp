#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace crtvss {

using Sha1Digest = std::array<uint8_t, 20>;

// SHA-1 is the digest the simulated platform uses for PCR chaining,
// integrity measurements and message digests. Its cryptographic weakness
// is irrelevant at simulation scale; the hash is pluggable at the call
// sites that take a digest function.
class Sha1 {
 public:
  Sha1();

  void Update(std::span<const uint8_t> data);
  void Update(const std::string& data);
  Sha1Digest Finish();

  static Sha1Digest Hash(std::span<const uint8_t> data);
  static Sha1Digest Hash(const std::string& data);

 private:
  void ProcessBlock(const uint8_t* block);

  std::array<uint32_t, 5> state_;
  std::array<uint8_t, 64> buffer_;
  uint64_t total_bytes_;
  size_t buffered_;
};

std::string DigestToHex(const Sha1Digest& digest);

}  // namespace crtvss
