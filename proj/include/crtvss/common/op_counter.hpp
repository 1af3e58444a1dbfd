#pragma once

#include <cstdint>

namespace crtvss {

// Multiplication tally used by the scheme-comparison benchmark.
struct OpCounter {
  uint64_t mults = 0;
};

}  // namespace crtvss
