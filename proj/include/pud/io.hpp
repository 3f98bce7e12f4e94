#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pud/core_model.hpp"

namespace pud {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// `element kind predicted_day [payload...]`; predicted_day may be `inf`.
std::vector<Prediction> read_predictions(std::istream& in);
void write_predictions(std::ostream& out, const std::vector<Prediction>& ps);

// `day element kind [payload...]`, one event per day, days strictly increasing.
std::vector<RealEvent> read_stream(std::istream& in);
void write_stream(std::ostream& out, const std::vector<RealEvent>& rs);

// `#bundle <index> <delivery_day>` headers, each followed by prediction lines.
std::vector<PredictionBundle> read_bundles(std::istream& in);
void write_bundles(std::ostream& out, const std::vector<PredictionBundle>& bs);

// Insertions announce the day their deletion is expected.
struct DeletionStreamRecord {
  Day day = 0;
  Event event;
  Day predicted_deletion = kEndOfHorizon;  // meaningful for insertions only
};
// `day I element payload... predicted_deletion_day` and `day D element`.
std::vector<DeletionStreamRecord> read_deletion_stream(std::istream& in, std::size_t payload_width);
void write_deletion_stream(std::ostream& out, const std::vector<DeletionStreamRecord>& rs);

// Predicted-insertion instance: the predicted ground set, then the stream.
struct InsertionInstance {
  struct Member {
    Element element = 0;
    Day predicted_insertion = kEndOfHorizon;
    Payload payload;
  };
  struct Record {
    Day day = 0;
    Event event;
    Day predicted_reinsertion = kEndOfHorizon;  // deletions only
  };
  std::vector<Member> ground;
  std::vector<Record> stream;
};
// `#set` section of `element predicted_insertion_day payload...` lines, then
// `#stream` section of `day I element payload...` / `day D element [day]`.
InsertionInstance read_insertion_instance(std::istream& in);
void write_insertion_instance(std::ostream& out, const InsertionInstance& inst);

// `# key=value` metadata lines are skipped by the readers; this fetches one.
std::optional<std::string> read_sidecar(std::istream& in, const std::string& key);

std::string format_day(Day d);

}  // namespace pud
