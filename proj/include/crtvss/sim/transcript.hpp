#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crtvss/sim/envelope.hpp"

namespace crtvss::sim {

// Everything that happened in one scenario run, in event order. Verdict
// strings come from the fixed vocabulary below.
inline constexpr char kVerdictPass[] = "PASS";
inline constexpr char kVerdictAttackFailed[] = "ATTACK_FAILED";
inline constexpr char kVerdictAttackSucceeded[] = "ATTACK_SUCCEEDED";
inline constexpr char kVerdictCheatBlocked[] = "CHEAT_BLOCKED";
inline constexpr char kVerdictReconstructionImpossible[] = "RECONSTRUCTION_IMPOSSIBLE";

struct TranscriptEvent {
  size_t step = 0;
  std::string channel;  // trans / recv / drop / signal
  NodeId from = 0;
  NodeId to = 0;
  std::string term;                              // canonical term encoding, or signal text
  std::map<std::string, std::string> numeric;    // optional numeric view
};

struct Transcript {
  std::string scenario;
  uint64_t seed = 0;
  std::vector<TranscriptEvent> events;
  std::vector<std::string> verdicts;

  std::string FinalVerdict() const { return verdicts.empty() ? "" : verdicts.back(); }
  std::string ToJson(bool pretty = false) const;
};

}  // namespace crtvss::sim
