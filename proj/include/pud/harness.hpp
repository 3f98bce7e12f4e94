#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "pud/backstop.hpp"
#include "pud/engine.hpp"
#include "pud/generate.hpp"
#include "pud/oracle.hpp"

namespace pud {

// One fully dynamic algorithm answering a day at a time.
class DynamicAlgorithm {
 public:
  virtual ~DynamicAlgorithm() = default;
  virtual Answer run_day(const Update& u) = 0;
  virtual const WorkCounters& counters() const = 0;
  virtual std::int32_t depth() const = 0;
};

enum class Mode { Predicted, PredictedDeletion, Offline, BruteForce, Backstopped, Boosted };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

struct AlgorithmSpec {
  ProblemKind problem = ProblemKind::Counter;
  std::int32_t vertices = 0;
  Day T = 1;
  std::uint64_t seed = 1;
  Scheduling scheduling = Scheduling::Harmonic;
  bool just_in_time = false;  // predicted-deletion model, incremental problems only
};

// Decremental problems run in the predicted-insertion model; the others run
// the general engine over their incremental contract (or MSF directly).
std::unique_ptr<DynamicAlgorithm> make_algorithm(const AlgorithmSpec& spec, const std::vector<Prediction>& predictions);
std::unique_ptr<DynamicAlgorithm> make_brute_force(ProblemKind problem, std::int32_t vertices);
std::unique_ptr<SteppableAlgorithm> make_steppable(std::unique_ptr<DynamicAlgorithm> algorithm);

// Attaches to each event the predicted day of the element's next event of
// the other kind: deletions for insertions, reinsertions for deletions.
std::vector<Update> updates_with_hints(const std::vector<RealEvent>& stream, const std::vector<Prediction>& predictions);

// Predictions that match the stream exactly.
std::vector<Prediction> exact_predictions(const std::vector<RealEvent>& stream);

struct RunOptions {
  Mode mode = Mode::Predicted;
  ProblemKind problem = ProblemKind::Counter;
  std::int32_t vertices = 0;
  std::uint64_t seed = 1;
  int k = 1;
  int instances_cap = 0;
  bool measure_epoch_work = false;
};

struct RunResult {
  std::vector<Answer> outputs;
  WorkCounters counters;
  std::int32_t depth = 0;
  std::uint64_t meta_steps = 0;
  std::vector<EpochRecord> epochs;
};

RunResult run_stream(const RunOptions& opt, Day T, const std::vector<RealEvent>& stream,
                     const std::vector<Prediction>& predictions, const std::vector<PredictionBundle>& bundles,
                     std::ostream* log = nullptr);

}  // namespace pud
