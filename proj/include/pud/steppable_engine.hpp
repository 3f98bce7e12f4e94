#pragma once

#include <memory>
#include <utility>

#include "pud/backstop.hpp"
#include "pud/engine.hpp"

namespace pud {

// Preprocessing is owed before the first update is answered.
template <DncProblem P>
std::unique_ptr<SteppableAlgorithm> make_steppable_engine(P problem, EngineOptions opt,
                                                          const std::vector<Prediction>& predictions) {
  auto engine = std::make_shared<Engine<P>>(std::move(problem), opt, predictions);
  const std::uint64_t upfront = engine->counters().total_units();
  return std::make_unique<DebtStepper>(
      [engine](const Update& u) {
        const std::uint64_t before = engine->counters().total_units();
        Answer out = engine->run_day(u.day, u.event, u.hint);
        return std::pair{std::move(out), engine->counters().total_units() - before};
      },
      upfront);
}

}  // namespace pud
