#pragma once

#include <set>
#include <string>

#include "crtvss/common/rng.hpp"
#include "crtvss/sim/deduction.hpp"
#include "crtvss/sim/envelope.hpp"
#include "crtvss/sim/transcript.hpp"

namespace crtvss::sim {

// Pseudo-address for broadcast traffic in transcripts.
inline constexpr NodeId kBroadcast = 0;

// The enemy sits on every channel: whatever is transmitted lands in its
// knowledge before (possibly) being delivered. Scripted scenarios drive
// blocking, injection and replay themselves.
struct IntruderState {
  std::set<Term> knowledge;
  DeductionContext deduction;

  void Observe(const Term& term) { knowledge.insert(term); }
  bool Knows(const Term& term) const { return knowledge.contains(term); }
};

// Deterministic event recorder: a step counter, the seeded rng, the
// intruder, and the transcript under construction. Scenarios route every
// envelope through Transmit and record receptions and local signals.
class Simulator {
 public:
  Simulator(std::string scenario, uint64_t seed)
      : rng_(seed), transcript_{std::move(scenario), seed, {}, {}} {}

  SeededRng& rng() { return rng_; }
  IntruderState& intruder() { return intruder_; }
  Transcript& transcript() { return transcript_; }

  // Records the trans event and feeds the intruder.
  void Transmit(const Envelope& envelope,
                std::map<std::string, std::string> numeric = {});
  void Receive(const Envelope& envelope);
  void Drop(const Envelope& envelope, const std::string& reason);
  void Signal(NodeId node, const std::string& text,
              std::map<std::string, std::string> numeric = {});
  void Verdict(const std::string& verdict) { transcript_.verdicts.push_back(verdict); }

 private:
  SeededRng rng_;
  IntruderState intruder_;
  Transcript transcript_;
  size_t step_ = 0;
};

}  // namespace crtvss::sim
