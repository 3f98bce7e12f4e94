#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pud/engine.hpp"

namespace pud {

// A worst-case decremental algorithm built once over a ground set.
template <class C>
concept DecrementalContract =
    requires(const C& c, typename C::State& s, std::span<const ElementView> ground, const ElementView& v,
             std::uint64_t& units) {
      { c.initialize(ground) } -> std::convertible_to<typename C::State>;
      c.remove(s, v, units);
      { c.size(std::as_const(s)) } -> std::convertible_to<std::size_t>;
      { c.output(std::as_const(s)) } -> std::convertible_to<Answer>;
    };

// Incremental view over anti-elements: the anti-element of e is present
// exactly when e is not, so inserting it means removing e from a structure
// initialized with the whole ground set.
template <DecrementalContract C>
class DecrementalLift {
 public:
  using State = typename C::State;

  DecrementalLift() = default;
  explicit DecrementalLift(C contract) : contract_(std::move(contract)) {}

  void add_to_ground(const ElementView& v) { ground_.emplace(v.id, *v.payload); }

  State base_state() const {
    std::vector<ElementView> views;
    views.reserve(ground_.size());
    for (const auto& [id, payload] : ground_) views.push_back({id, &payload});
    return contract_.initialize(views);
  }

  State compute(const State& parent, const WindowInput& in, std::uint64_t& units) const {
    State s = parent;
    for (const auto& v : in.permanents) contract_.remove(s, v, units);
    return s;
  }

  State finalize(const State& leaf, std::span<const ElementView> alive, std::uint64_t& units) const {
    State s = leaf;
    for (const auto& v : alive) contract_.remove(s, v, units);
    return s;
  }

  Answer output(const State& s) const { return contract_.output(s); }
  std::size_t state_size(const State& s) const { return contract_.size(s); }

  const std::map<Element, Payload>& ground() const { return ground_; }
  const C& contract() const { return contract_; }

 private:
  C contract_;
  std::map<Element, Payload> ground_;
};

struct GroundMember {
  Element id = 0;
  Payload payload;
  Day predicted_insertion = kEndOfHorizon;
};

// Fully dynamic algorithm for streams whose insertions are predicted: every
// member of the predicted set starts out as a present anti-element whose
// deletion is due on the member's predicted insertion day.
template <DecrementalContract C>
class DecrementalDynamic {
 public:
  DecrementalDynamic(C contract, Day T, std::uint64_t seed, const std::vector<GroundMember>& ground)
      : engine_(make_lift(std::move(contract), ground), options(T, seed), anti_predictions(ground),
                anti_present(ground)) {}

  // `reinsertion` is the predicted day a deleted element comes back.
  Answer run_day(Day t, const Event& real, Day reinsertion = kEndOfHorizon) {
    Event anti = real;
    anti.kind = flip(real.kind);
    return engine_.run_day(t, anti, reinsertion);
  }

  const Engine<DecrementalLift<C>>& engine() const { return engine_; }
  const WorkCounters& counters() const { return engine_.counters(); }

  // Current ground set minus the present anti-elements.
  std::vector<Element> active() const {
    std::vector<Element> out;
    for (const auto& [id, payload] : engine_.problem().ground())
      if (!engine_.alive(id)) out.push_back(id);
    return out;
  }
  std::vector<Element> anti_active() const {
    std::vector<Element> out;
    for (const auto& [id, payload] : engine_.problem().ground())
      if (engine_.alive(id)) out.push_back(id);
    return out;
  }

 private:
  static DecrementalLift<C> make_lift(C contract, const std::vector<GroundMember>& ground) {
    DecrementalLift<C> lift(std::move(contract));
    for (const auto& g : ground) lift.add_to_ground({g.id, &g.payload});
    return lift;
  }
  static EngineOptions options(Day T, std::uint64_t seed) {
    EngineOptions o;
    o.T = T;
    o.seed = seed;
    o.just_in_time = true;
    o.unknown_elements_present = true;
    return o;
  }
  static std::vector<Prediction> anti_predictions(const std::vector<GroundMember>& ground) {
    std::vector<Prediction> out;
    for (const auto& g : ground) {
      Prediction p;
      p.event = Event{g.id, Kind::Delete, g.payload};
      p.day = g.predicted_insertion;
      if (!p.padding()) out.push_back(std::move(p));
    }
    return out;
  }
  static std::vector<PresentElement> anti_present(const std::vector<GroundMember>& ground) {
    std::vector<PresentElement> out;
    for (const auto& g : ground) out.push_back({g.id, g.payload});
    return out;
  }

  Engine<DecrementalLift<C>> engine_;
};

}  // namespace pud
