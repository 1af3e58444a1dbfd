#pragma once

#include <cstddef>

#include "crtvss/sim/term.hpp"

namespace crtvss::sim {

using NodeId = size_t;

struct Envelope {
  NodeId from = 0;
  NodeId to = 0;
  Term payload;
};

}  // namespace crtvss::sim
