#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "pud/backstop.hpp"
#include "pud/harness.hpp"
#include "pud/incremental.hpp"
#include "pud/problems.hpp"
#include "pud/steppable_engine.hpp"
#include "support.hpp"

using namespace pud;

namespace {

// Answers the day number after spending cost(day) units on it.
std::unique_ptr<SteppableAlgorithm> synthetic(std::function<std::uint64_t(Day)> cost) {
  return std::make_unique<DebtStepper>([cost](const Update& u) { return std::pair{Answer{u.day}, cost(u.day)}; });
}

Update update(Day t) { return Update{t, Event{t, Kind::Insert, {}}, kEndOfHorizon}; }

}  // namespace

TEST_CASE("a single algorithm behind the backstop runs unchanged") {
  auto g = generate(ErrorModel{ErrorKind::UniformOffset, 4.0}, ProblemKind::Counter, 12, 64, 5);
  EngineOptions o;
  o.T = 64;
  o.seed = 5;
  Engine<IncrementalLift<CounterContract>> alone({}, o, g.predictions);
  std::vector<std::unique_ptr<SteppableAlgorithm>> algs;
  algs.push_back(make_steppable_engine(IncrementalLift<CounterContract>{}, o, g.predictions));
  Backstop b(std::move(algs));
  for (const auto& r : g.stream) {
    CHECK(b.run_day(Update{r.day, r.event, kEndOfHorizon}) == alone.run_day(r.day, r.event));
    CHECK(b.stats().meta_steps == alone.counters().total_units());
  }
  CHECK(b.algorithm(0).steps_taken() == b.stats().meta_steps);
}

TEST_CASE("fast and slow pair: steps track the faster one and stay level") {
  std::vector<std::unique_ptr<SteppableAlgorithm>> algs;
  algs.push_back(synthetic([](Day) { return 1; }));
  algs.push_back(synthetic([](Day t) { return static_cast<std::uint64_t>(2 * t - 1); }));
  Backstop b(std::move(algs));
  for (Day t = 1; t <= 500; ++t) {
    CHECK(b.run_day(update(t)) == Answer{t});
    const std::uint64_t fast_total = static_cast<std::uint64_t>(t);
    CHECK(b.stats().meta_steps <= 2 * fast_total + 4 * static_cast<std::uint64_t>(t));
    CHECK(b.stats().winner_by_day.back() == 0);
  }
  CHECK(b.stats().max_step_gap <= 1);
}

TEST_CASE("slow start, fast later: the winner switches and the bound holds") {
  std::vector<std::unique_ptr<SteppableAlgorithm>> algs;
  algs.push_back(synthetic([](Day t) { return t <= 10 ? 100 : 1; }));
  algs.push_back(synthetic([](Day) { return 7; }));
  Backstop b(std::move(algs));
  std::uint64_t a = 0, c = 0;
  for (Day t = 1; t <= 200; ++t) {
    b.run_day(update(t));
    a += t <= 10 ? 100 : 1;
    c += 7;
    CHECK(b.stats().meta_steps <= 2 * std::min(a, c) + 4 * static_cast<std::uint64_t>(t));
  }
  CHECK(b.stats().max_step_gap <= 1);
}

TEST_CASE("engines with different seeds answer identically") {
  auto g = generate(ErrorModel{ErrorKind::UniformOffset, 8.0}, ProblemKind::Connectivity, 10, 128, 2);
  auto first = run_stream(RunOptions{Mode::Predicted, ProblemKind::Connectivity, 10, 1}, 128, g.stream, g.predictions, {});
  auto second = run_stream(RunOptions{Mode::Predicted, ProblemKind::Connectivity, 10, 99}, 128, g.stream, g.predictions, {});
  CHECK(first.outputs == second.outputs);
  auto both = run_stream(RunOptions{Mode::Backstopped, ProblemKind::Connectivity, 10, 3}, 128, g.stream, g.predictions, {});
  CHECK(both.outputs == first.outputs);
  CHECK(both.outputs == brute_force_outputs(ProblemKind::Connectivity, 10, g.stream));
}

TEST_CASE("a failing algorithm leaves the rotation") {
  std::vector<std::unique_ptr<SteppableAlgorithm>> algs;
  algs.push_back(std::make_unique<DebtStepper>([](const Update& u) -> std::pair<Answer, std::uint64_t> {
    if (u.day == 3) throw std::runtime_error("broken");
    return {Answer{u.day}, 1};
  }));
  algs.push_back(synthetic([](Day) { return 3; }));
  std::ostringstream warn;
  Backstop b(std::move(algs), &warn);
  for (Day t = 1; t <= 6; ++t) CHECK(b.run_day(update(t)) == Answer{t});
  CHECK_FALSE(b.alive(0));
  CHECK(b.alive(1));
  CHECK(warn.str().find("broken") != std::string::npos);
}

TEST_CASE("instance count") {
  CHECK(BoostRunner::instance_count(1, 2, 1) == 1);
  CHECK(BoostRunner::instance_count(1, 512, 4) == 9);
  CHECK(BoostRunner::instance_count(2, 512, 4) == 18);
  CHECK(BoostRunner::instance_count(1, 4, 1000) == 10);
}

TEST_CASE("unknown horizon: nine doublings over 300 days") {
  auto g = generate(ErrorModel{ErrorKind::UniformOffset, 4.0}, ProblemKind::Counter, 16, 300, 4);
  std::ostringstream log;
  RunOptions o{Mode::Boosted, ProblemKind::Counter, 0, 4};
  o.instances_cap = 3;
  auto res = run_stream(o, 300, g.stream, g.predictions, {}, &log);
  REQUIRE(res.epochs.size() == 9);
  std::size_t replay = 0;
  for (std::size_t j = 0; j < res.epochs.size(); ++j) {
    CHECK(res.epochs[j].horizon == Day{2} << j);
    CHECK(res.epochs[j].replayed == (std::size_t{1} << j) - 1);
    replay += res.epochs[j].replayed;
  }
  CHECK(replay == 502);
  CHECK(replay <= 600);
  CHECK(res.outputs == brute_force_outputs(ProblemKind::Counter, 0, g.stream));
  CHECK(log.str().find("#epoch T̂=512 L=3 uncapped=9") != std::string::npos);
}

TEST_CASE("boosting stays exact with useless bundles") {
  auto g = generate(ErrorModel{ErrorKind::Drop, 0.0, 1.0}, ProblemKind::Msf, 6, 100, 8);
  RunOptions o{Mode::Boosted, ProblemKind::Msf, 6, 8};
  o.instances_cap = 2;
  auto res = run_stream(o, 100, g.stream, g.predictions, {});
  CHECK(res.outputs == brute_force_outputs(ProblemKind::Msf, 6, g.stream));
}
