#pragma once

#include <vector>

#include "pud/core_model.hpp"
#include "pud/engine.hpp"
#include "pud/oracle.hpp"

namespace testing {

using namespace pud;

inline Prediction pred(Element e, Kind k, Day d, Payload payload = {}) {
  Prediction p;
  p.event = Event{e, k, std::move(payload)};
  p.day = d;
  return p;
}

inline RealEvent real(Day d, Element e, Kind k, Payload payload = {}) {
  return RealEvent{d, Event{e, k, std::move(payload)}};
}

// Runs an engine over the whole stream and compares every day with brute force.
template <class P>
int mismatches(Engine<P>& engine, ProblemKind kind, std::int32_t vertices, const std::vector<RealEvent>& stream) {
  auto expected = brute_force_outputs(kind, vertices, stream);
  int bad = 0;
  for (std::size_t i = 0; i < stream.size(); ++i)
    bad += engine.run_day(stream[i].day, stream[i].event) != expected[i];
  return bad;
}

}  // namespace testing
