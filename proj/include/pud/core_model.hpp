#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace pud {

using Day = std::int32_t;
using Element = std::int64_t;
using Payload = std::vector<std::int64_t>;

// Predicted day of an event nobody predicted, or of a padding entry.
inline constexpr Day kEndOfHorizon = std::numeric_limits<Day>::max();

enum class Kind : std::uint8_t { Insert, Delete };

inline char kind_char(Kind k) { return k == Kind::Insert ? 'I' : 'D'; }
inline Kind flip(Kind k) { return k == Kind::Insert ? Kind::Delete : Kind::Insert; }

struct Event {
  Element element = 0;
  Kind kind = Kind::Insert;
  Payload payload;
};

struct Prediction {
  Event event;
  Day day = kEndOfHorizon;
  int reschedules = 0;

  bool padding() const { return day == kEndOfHorizon; }
};

struct RealEvent {
  Day day = 0;
  Event event;
};

struct PredictionBundle {
  int index = 1;
  Day delivery_day = 1;
  std::vector<Prediction> predictions;
};

struct Horizon {
  Day T = 1;
  bool known = true;
};

// Sum over (element, kind) keys of the sorted-pairing distance between
// predicted and real days. Unmatched events on either side cost T each.
// Padding entries are ignored.
std::int64_t l1_error(const std::vector<Prediction>& predicted,
                      const std::vector<RealEvent>& realized, Day T);

// Same metric on raw day lists for a single key.
std::int64_t l1_error_single_key(std::vector<Day> predicted, std::vector<Day> real,
                                 Day T);

struct BundleCheck {
  bool ok = true;
  int bundle = 0;  // index of the first offending bundle
  std::string reason;
};

// Checks nesting, exact doubling, and that entries new in a bundle are not
// dated before the bundle's delivery day.
BundleCheck validate_bundle_sequence(const std::vector<PredictionBundle>& bundles);

}  // namespace pud
