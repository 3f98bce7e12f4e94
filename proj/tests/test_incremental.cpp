#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "pud/engine.hpp"
#include "pud/generate.hpp"
#include "pud/incremental.hpp"
#include "pud/problems.hpp"
#include "support.hpp"

using namespace pud;
using testing::pred;
using testing::real;

namespace {

using CounterLift = IncrementalLift<CounterContract>;

EngineOptions options(Day T, std::uint64_t seed, bool jit = false) {
  EngineOptions o;
  o.T = T;
  o.seed = seed;
  o.just_in_time = jit;
  return o;
}

template <class P>
std::set<Element> partition_union(const Engine<P>& e, Day t, bool* disjoint) {
  std::set<Element> out;
  *disjoint = true;
  for (auto w = e.tree().leaf(t); w != PartitionTree::kNone; w = e.tree().node(w).parent)
    for (Element x : e.permanents(w)) *disjoint &= out.insert(x).second;
  return out;
}

}  // namespace

TEST_CASE("an element alive all along is permanent at the root") {
  std::vector<Prediction> ps;
  for (Day d = 1; d <= 8; ++d) ps.push_back(pred(10 + d, Kind::Insert, d));
  EngineOptions o = options(8, 1);
  o.scheduling = Scheduling::Exact;
  Engine<CounterLift> e({}, o, ps, {PresentElement{1, {}}});
  CHECK(e.permanents(e.tree().root()) == std::vector<Element>{1});
  for (Day t = 1; t <= 8; ++t) CHECK(e.run_day(t, Event{10 + t, Kind::Insert, {}}) == Answer{t + 1});
}

TEST_CASE("insert and delete on one day is a leaf transient") {
  std::vector<Prediction> ps{pred(1, Kind::Insert, 3), pred(1, Kind::Delete, 3)};
  for (Day d = 1; d <= 6; ++d)
    if (d != 3) ps.push_back(pred(10 + d, Kind::Insert, d));
  EngineOptions o = options(6, 2);
  o.scheduling = Scheduling::Exact;
  Engine<CounterLift> e({}, o, ps);
  for (std::size_t id = 0; id < e.tree().size(); ++id) {
    auto perms = e.permanents(static_cast<PartitionTree::NodeId>(id));
    CHECK(std::find(perms.begin(), perms.end(), 1) == perms.end());
  }
}

TEST_CASE("permanents partition the active set and never outnumber the sibling's events") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto g = generate(ErrorModel{ErrorKind::UniformOffset, 8.0}, ProblemKind::Counter, 12, 128, seed);
    Engine<CounterLift> e({}, options(128, seed), g.predictions);
    BruteForce bf(ProblemKind::Counter, 0);
    for (const auto& r : g.stream) {
      e.run_day(r.day, r.event);
      bf.apply(r.event);
      bool disjoint = false;
      auto got = partition_union(e, r.day, &disjoint);
      auto leaf = e.tree().leaf(r.day);
      for (Element x : e.dynamic(leaf))
        if (e.alive(x)) got.insert(x);
      std::set<Element> want;
      for (const auto& [id, p] : bf.active()) want.insert(id);
      CHECK(disjoint);
      CHECK(got == want);
    }
    for (std::size_t id = 0; id < e.tree().size(); ++id) {
      const auto w = static_cast<PartitionTree::NodeId>(id);
      const auto& n = e.tree().node(w);
      if (n.parent == PartitionTree::kNone) continue;
      const auto& p = e.tree().node(n.parent);
      const auto sibling = p.left == w ? p.right : p.left;
      CHECK(e.permanents(w).size() <= e.scheduled_events(sibling));
    }
  }
}

TEST_CASE("counter windows do one unit per permanent") {
  CounterLift lift;
  Payload none;
  std::vector<ElementView> perms{{1, &none}, {2, &none}, {3, &none}};
  std::vector<ElementView> dyn{{4, &none}};
  std::uint64_t units = 0;
  auto s = lift.compute(5, WindowInput{1, 4, perms, dyn}, units);
  CHECK(s == 8);
  CHECK(units == 3);
}

TEST_CASE("connectivity lifted matches the oracle") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto g = generate(ErrorModel{ErrorKind::UniformOffset, 8.0}, ProblemKind::Connectivity, 10, 200, seed);
    Engine<IncrementalLift<ConnectivityContract>> e(IncrementalLift<ConnectivityContract>{ConnectivityContract{10}},
                                                    options(200, seed), g.predictions);
    CHECK(testing::mismatches(e, ProblemKind::Connectivity, 10, g.stream) == 0);
  }
}

TEST_CASE("window states are independent copies") {
  IncrementalLift<ConnectivityContract> lift{ConnectivityContract{6}};
  auto parent = lift.base_state();
  Payload ab{0, 1}, cd{2, 3};
  std::uint64_t units = 0;
  std::vector<ElementView> first{{1, &ab}};
  parent = lift.compute(parent, WindowInput{1, 2, first, {}}, units);
  const auto before = parent.parent;
  std::vector<ElementView> second{{2, &cd}};
  auto child = lift.compute(parent, WindowInput{1, 1, second, {}}, units);
  CHECK(parent.parent == before);
  CHECK(parent.components == 5);
  CHECK(child.components == 4);
}

TEST_CASE("just in time: exact deletions never retrigger") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = generate(ErrorModel{}, ProblemKind::Counter, 16, 256, seed);
    auto recs = to_deletion_stream(g);
    Engine<CounterLift> e({}, options(256, seed, true), {});
    auto expected = brute_force_outputs(ProblemKind::Counter, 0, g.stream);
    int bad = 0;
    for (std::size_t i = 0; i < recs.size(); ++i)
      bad += e.run_day(recs[i].day, recs[i].event, recs[i].predicted_deletion) != expected[i];
    CHECK(bad == 0);
    CHECK(e.counters().retrigger_calls == 0);
  }
}

TEST_CASE("just in time: an early deletion retriggers once, insertions never") {
  Engine<CounterLift> e({}, options(16, 3, true), {});
  CHECK(e.run_day(1, Event{1, Kind::Insert, {}}, 12) == Answer{1});
  for (Day d = 2; d <= 4; ++d) {
    e.run_day(d, Event{d, Kind::Insert, {}}, 16);
    CHECK(e.counters().retrigger_calls == 0);
  }
  CHECK(e.run_day(5, Event{1, Kind::Delete, {}}) == Answer{3});
  CHECK(e.counters().retrigger_calls == 1);
  CHECK(e.counters().early_calls == 1);
  e.run_day(6, Event{9, Kind::Insert, {}});
  CHECK(e.counters().retrigger_calls == 1);
}

TEST_CASE("just in time: random predicted-deletion streams stay exact") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = generate(ErrorModel{ErrorKind::UniformOffset, 16.0}, ProblemKind::Connectivity, 10, 200, seed);
    auto recs = to_deletion_stream(g);
    Engine<IncrementalLift<ConnectivityContract>> e(IncrementalLift<ConnectivityContract>{ConnectivityContract{10}},
                                                    options(200, seed, true), {});
    auto expected = brute_force_outputs(ProblemKind::Connectivity, 10, g.stream);
    int bad = 0;
    // Late deletions falling due on an insertion day retrigger on their own.
    auto own = [&] { return e.counters().retrigger_calls - e.counters().late_calls; };
    std::uint64_t before = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      bad += e.run_day(recs[i].day, recs[i].event, recs[i].predicted_deletion) != expected[i];
      if (recs[i].event.kind == Kind::Insert) CHECK(own() == before);
      before = own();
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("connectivity inserts stay within a logarithmic step count") {
  const std::int32_t n = 64;
  ConnectivityContract c{n};
  auto s = c.init();
  std::uint64_t worst = 0;
  std::vector<Payload> edges;
  for (std::int32_t step = 1; step < n; step *= 2)
    for (std::int32_t v = 0; v + step < n; v += 2 * step) edges.push_back({v, v + step});
  for (std::int32_t v = 0; v < n; v += 3) edges.push_back({v, (v * 7 + 5) % n});
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::uint64_t units = 0;
    c.insert(s, ElementView{static_cast<Element>(i), &edges[i]}, units);
    worst = std::max(worst, units);
  }
  CHECK(worst <= 2 * std::log2(n) + 1);
}
