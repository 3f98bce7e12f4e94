#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "pud/core_model.hpp"
#include "pud/work.hpp"

namespace pud {

struct Update {
  Day day = 0;
  Event event;
  Day hint = kEndOfHorizon;  // predicted day of the element's next event, if any
};

// An algorithm that advances one work unit per step.
class SteppableAlgorithm {
 public:
  virtual ~SteppableAlgorithm() = default;
  virtual void buffer_event(const Update& u) = 0;
  // Returns true once every buffered event has been processed.
  virtual bool step() = 0;
  virtual bool buffer_complete() const = 0;
  virtual Answer current_output() const = 0;
  virtual std::uint64_t steps_taken() const = 0;
  // Work units the algorithm has incurred, paid or not.
  virtual std::uint64_t work() const = 0;
  // Processes everything buffered without counting steps.
  virtual void drain() = 0;
};

// Wraps an algorithm that reports its cost after processing an update in
// one go: the cost becomes a debt paid off one unit per step, and the
// output only becomes visible once it is paid.
class DebtStepper : public SteppableAlgorithm {
 public:
  // `process` applies one update and returns {output, units spent}.
  using Process = std::function<std::pair<Answer, std::uint64_t>(const Update&)>;

  DebtStepper(Process process, std::uint64_t initial_debt = 0)
      : process_(std::move(process)), debt_(initial_debt), work_(initial_debt) {}

  void buffer_event(const Update& u) override { pending_.push_back(u); }
  bool step() override;
  bool buffer_complete() const override { return debt_ == 0 && pending_.empty(); }
  Answer current_output() const override { return output_; }
  std::uint64_t steps_taken() const override { return steps_; }
  std::uint64_t work() const override { return work_; }
  void drain() override;

 private:
  void pull();

  Process process_;
  std::deque<Update> pending_;
  Answer output_;
  Answer staged_;
  std::uint64_t debt_;
  std::uint64_t work_;
  std::uint64_t steps_ = 0;
};

struct BackstopStats {
  std::uint64_t meta_steps = 0;
  std::uint64_t max_step_gap = 0;  // largest max-min steps_taken seen after a round
  std::vector<std::uint64_t> meta_steps_by_day;
  std::vector<std::size_t> winner_by_day;
};

// Interleaves single steps of several algorithms fed the same updates; a
// day's answer is taken from whichever finishes its buffer first.
class Backstop {
 public:
  explicit Backstop(std::vector<std::unique_ptr<SteppableAlgorithm>> algorithms, std::ostream* warnings = nullptr);

  void buffer(const Update& u);
  // Steps round-robin until someone's buffer is complete.
  Answer settle();
  Answer run_day(const Update& u) {
    buffer(u);
    return settle();
  }

  const BackstopStats& stats() const { return stats_; }
  std::size_t size() const { return algorithms_.size(); }
  SteppableAlgorithm& algorithm(std::size_t i) { return *algorithms_[i]; }
  bool alive(std::size_t i) const { return alive_[i]; }

 private:
  void note_gap();

  std::vector<std::unique_ptr<SteppableAlgorithm>> algorithms_;
  std::vector<bool> alive_;
  std::size_t next_ = 0;
  std::ostream* warnings_;
  BackstopStats stats_;
};

// Builds one instance for horizon guess `horizon` from the predictions
// known so far.
using InstanceFactory = std::function<std::unique_ptr<SteppableAlgorithm>(
    Day horizon, const std::vector<Prediction>& predictions, std::uint64_t seed)>;

struct BoostConfig {
  int k = 1;
  int instances_cap = 0;  // 0 means no cap
  std::uint64_t seed = 1;
  std::size_t ground_size = 1;
  bool measure_epoch_work = false;
};

struct EpochRecord {
  Day horizon = 0;          // the new guess
  std::size_t instances = 0;
  std::size_t uncapped = 0;
  std::size_t replayed = 0;
  std::vector<std::uint64_t> instance_work;  // filled when measuring
};

// Guess-and-double over an unknown horizon. When the day reaches the
// current guess, the guess doubles, the next bundle is taken, and a fresh
// set of independent instances replays everything seen so far.
class BoostRunner {
 public:
  BoostRunner(InstanceFactory factory, std::vector<PredictionBundle> bundles, BoostConfig config,
              std::ostream* log = nullptr);

  Answer run_day(const Update& u);
  void finish();

  const std::vector<EpochRecord>& epochs() const { return epochs_; }
  std::uint64_t meta_steps() const;
  std::size_t replayed() const;

  static std::size_t instance_count(int k, Day horizon, std::size_t ground_size);

 private:
  void start_epoch(Day t);
  void close_epoch();
  std::vector<Prediction> predictions_for_epoch() const;

  InstanceFactory factory_;
  std::vector<PredictionBundle> bundles_;
  BoostConfig config_;
  std::ostream* log_;
  Day horizon_ = 1;
  std::vector<Update> history_;
  std::unique_ptr<Backstop> backstop_;
  std::vector<EpochRecord> epochs_;
  std::uint64_t finished_steps_ = 0;
};

}  // namespace pud
