#include "crtvss/sim/transcript.hpp"

#include <json.hpp>

namespace crtvss::sim {

std::string Transcript::ToJson(bool pretty) const {
  nlohmann::ordered_json doc;
  doc["scenario"] = scenario;
  doc["seed"] = seed;
  doc["events"] = nlohmann::ordered_json::array();
  for (const TranscriptEvent& event : events) {
    nlohmann::ordered_json entry;
    entry["step"] = event.step;
    entry["channel"] = event.channel;
    entry["from"] = event.from;
    entry["to"] = event.to;
    entry["term"] = event.term;
    if (!event.numeric.empty()) {
      nlohmann::ordered_json numeric;
      for (const auto& [key, value] : event.numeric) {
        numeric[key] = value;
      }
      entry["numeric_view"] = numeric;
    }
    doc["events"].push_back(entry);
  }
  doc["verdicts"] = verdicts;
  return pretty ? doc.dump(2) + "\n" : doc.dump();
}

}  // namespace crtvss::sim
