#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "pud/engine.hpp"

namespace pud {

// A worst-case incremental algorithm: `insert` may only grow the state and
// reports its own cost in units.
template <class C>
concept IncrementalContract = requires(const C& c, typename C::State& s, const ElementView& v,
                                       std::uint64_t& units) {
  { c.init() } -> std::convertible_to<typename C::State>;
  c.insert(s, v, units);
  { c.size(std::as_const(s)) } -> std::convertible_to<std::size_t>;
  { c.output(std::as_const(s)) } -> std::convertible_to<Answer>;
};

// Runs an incremental algorithm over time windows: a window clones its
// parent's state and inserts the elements alive throughout it that its
// parent still treated as changing. Leaves add the survivors of their own
// day to a scratch copy.
template <IncrementalContract C>
class IncrementalLift {
 public:
  using State = typename C::State;

  IncrementalLift() = default;
  explicit IncrementalLift(C contract) : contract_(std::move(contract)) {}

  State base_state() const { return contract_.init(); }

  State compute(const State& parent, const WindowInput& in, std::uint64_t& units) const {
    State s = parent;
    for (const auto& v : in.permanents) contract_.insert(s, v, units);
    return s;
  }

  State finalize(const State& leaf, std::span<const ElementView> alive, std::uint64_t& units) const {
    State s = leaf;
    for (const auto& v : alive) contract_.insert(s, v, units);
    return s;
  }

  Answer output(const State& s) const { return contract_.output(s); }
  std::size_t state_size(const State& s) const { return contract_.size(s); }

  const C& contract() const { return contract_; }
  C& contract() { return contract_; }

 private:
  C contract_;
};

}  // namespace pud
