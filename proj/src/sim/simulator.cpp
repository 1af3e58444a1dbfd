#include "crtvss/sim/simulator.hpp"

namespace crtvss::sim {

void Simulator::Transmit(const Envelope& envelope, std::map<std::string, std::string> numeric) {
  intruder_.Observe(envelope.payload);
  TranscriptEvent event;
  event.step = step_++;
  event.channel = "trans";
  event.from = envelope.from;
  event.to = envelope.to;
  event.term = Encode(envelope.payload);
  event.numeric = std::move(numeric);
  transcript_.events.push_back(std::move(event));
}

void Simulator::Receive(const Envelope& envelope) {
  TranscriptEvent event;
  event.step = step_++;
  event.channel = "recv";
  event.from = envelope.from;
  event.to = envelope.to;
  event.term = Encode(envelope.payload);
  transcript_.events.push_back(std::move(event));
}

void Simulator::Drop(const Envelope& envelope, const std::string& reason) {
  TranscriptEvent event;
  event.step = step_++;
  event.channel = "drop";
  event.from = envelope.from;
  event.to = envelope.to;
  event.term = reason;
  transcript_.events.push_back(std::move(event));
}

void Simulator::Signal(NodeId node, const std::string& text,
                       std::map<std::string, std::string> numeric) {
  TranscriptEvent event;
  event.step = step_++;
  event.channel = "signal";
  event.from = node;
  event.to = node;
  event.term = text;
  event.numeric = std::move(numeric);
  transcript_.events.push_back(std::move(event));
}

}  // namespace crtvss::sim
