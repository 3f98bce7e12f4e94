#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pud/engine.hpp"

namespace pud {

// Minimum spanning forest over edges with payload `u v w`. Edge order is
// (weight, element id), so the forest is unique.
//
// A window keeps the edges that are still undecided for it: edges alive
// throughout the window are either committed (contracted into the forest)
// or discarded once the window's changing edges can no longer affect them.
// Vertices carry labels; a contraction relabels the merged side.
class MsfProblem {
 public:
  static constexpr bool kUsesDynamicSet = true;

  struct Edge {
    Element id = 0;
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t w = 0;
  };
  struct Chosen {
    Element id;
    std::shared_ptr<const Chosen> next;
  };
  struct State {
    std::vector<Edge> fixed;     // alive throughout, still undecided
    std::vector<Edge> changing;  // labelled copies of the dynamic edges
    std::shared_ptr<const Chosen> chosen;
    std::int64_t weight = 0;
    std::int64_t count = 0;
  };

  State base_state() const { return {}; }
  State compute(const State& parent, const WindowInput& in, std::uint64_t& units) const;
  State finalize(const State& leaf, std::span<const ElementView> alive, std::uint64_t& units) const;
  // Total weight, then the sorted ids of the forest's edges.
  Answer output(const State& s) const;
  std::size_t state_size(const State& s) const { return s.fixed.size() + s.changing.size() + 1; }

  static Edge edge_of(const ElementView& v);
};

}  // namespace pud
