#include "crtvss/attest/lists.hpp"

namespace crtvss {

void AddNeighbor(TrustLists& lists, sim::NodeId id) {
  lists.neighbors.insert(id);
  lists.trust.emplace(id, 0);
}

void RemoveNeighbor(TrustLists& lists, sim::NodeId id) {
  lists.neighbors.erase(id);
  lists.trust.erase(id);
  lists.keys.erase(id);
}

void EpochReset(TrustLists& lists) {
  for (auto& [id, mark] : lists.trust) {
    mark = 0;
  }
  lists.keys.clear();
}

bool ListsConsistent(const TrustLists& lists) {
  for (const auto& [id, mark] : lists.trust) {
    if (!lists.neighbors.contains(id)) {
      return false;
    }
  }
  for (const auto& [id, key] : lists.keys) {
    if (!lists.neighbors.contains(id)) {
      return false;
    }
  }
  return true;
}

}  // namespace crtvss
