#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "pud/engine.hpp"

namespace pud {

// Number of active elements.
struct CounterContract {
  using State = std::int64_t;
  State init() const { return 0; }
  void insert(State& s, const ElementView&, std::uint64_t& units) const {
    ++s;
    ++units;
  }
  std::size_t size(const State&) const { return 1; }
  Answer output(const State& s) const { return {s}; }
};

// Edges are payloads `u v [w]` over vertices 0..n-1. Union by rank without
// path compression keeps every insert within O(log n) steps.
class ConnectivityContract {
 public:
  struct State {
    std::vector<std::int32_t> parent;
    std::vector<std::uint8_t> rank;
    std::int64_t components = 0;
  };

  explicit ConnectivityContract(std::int32_t n = 0) : n_(n) {}

  std::int32_t vertices() const { return n_; }

  State init() const {
    State s;
    s.parent.resize(static_cast<std::size_t>(n_));
    for (std::int32_t v = 0; v < n_; ++v) s.parent[v] = v;
    s.rank.assign(static_cast<std::size_t>(n_), 0);
    s.components = n_;
    return s;
  }

  std::int32_t find(const State& s, std::int32_t v, std::uint64_t& units) const {
    while (s.parent[v] != v) {
      v = s.parent[v];
      ++units;
    }
    return v;
  }

  void insert(State& s, const ElementView& e, std::uint64_t& units) const {
    const auto& p = *e.payload;
    if (p.size() < 2) throw std::invalid_argument("edge payload needs two endpoints");
    ++units;
    auto a = find(s, vertex(p[0]), units);
    auto b = find(s, vertex(p[1]), units);
    if (a == b) return;
    if (s.rank[a] < s.rank[b]) std::swap(a, b);
    s.parent[b] = a;
    if (s.rank[a] == s.rank[b]) ++s.rank[a];
    --s.components;
  }

  bool connected(const State& s, std::int64_t u, std::int64_t v) const {
    std::uint64_t units = 0;
    return find(s, vertex(u), units) == find(s, vertex(v), units);
  }

  std::size_t size(const State&) const { return static_cast<std::size_t>(n_); }
  Answer output(const State& s) const { return {s.components}; }

 private:
  std::int32_t vertex(std::int64_t v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("unknown vertex " + std::to_string(v));
    return static_cast<std::int32_t>(v);
  }

  std::int32_t n_;
};

// Maximum of the active values (payload[0]); the empty set reports kNoValue.
struct DecrementalMaxContract {
  using State = std::multiset<std::int64_t>;
  static constexpr std::int64_t kNoValue = std::numeric_limits<std::int64_t>::min();

  State initialize(std::span<const ElementView> ground) const {
    State s;
    for (const auto& v : ground) s.insert(value(v));
    return s;
  }
  void remove(State& s, const ElementView& v, std::uint64_t& units) const {
    auto it = s.find(value(v));
    if (it == s.end()) throw std::logic_error("removing absent value of element " + std::to_string(v.id));
    s.erase(it);
    ++units;
  }
  std::size_t size(const State& s) const { return s.size() + 1; }
  Answer output(const State& s) const { return {s.empty() ? kNoValue : *s.rbegin()}; }

  static std::int64_t value(const ElementView& v) {
    if (v.payload->empty()) throw std::invalid_argument("value payload missing");
    return (*v.payload)[0];
  }
};

}  // namespace pud
