#pragma once

#include <map>
#include <set>

#include <gmpxx.h>

#include "crtvss/sim/envelope.hpp"

namespace crtvss {

// Per-node neighbor / trust / key lists. Trust marks: 1 trusted, 0 no
// authentication yet, -1 authentication failed. Entries in T and K only
// exist for current neighbors.
struct TrustLists {
  std::set<sim::NodeId> neighbors;
  std::map<sim::NodeId, int> trust;
  std::map<sim::NodeId, mpz_class> keys;
};

// New neighbors start with trust mark 0.
void AddNeighbor(TrustLists& lists, sim::NodeId id);

// Removal abolishes the corresponding trust and key entries.
void RemoveNeighbor(TrustLists& lists, sim::NodeId id);

// Periodic re-initialization: trust marks back to 0, keys dropped,
// neighbors untouched.
void EpochReset(TrustLists& lists);

// dom(T) and dom(K) within the neighbor set.
bool ListsConsistent(const TrustLists& lists);

}  // namespace crtvss
