#include "pud/msf.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace pud {
namespace {

// Union-find over sparse vertex labels.
class LabelDsu {
 public:
  std::int64_t find(std::int64_t x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) return x;
    std::int64_t root = find(it->second);
    it->second = root;
    return root;
  }
  bool unite(std::int64_t a, std::int64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::unordered_map<std::int64_t, std::int64_t> parent_;
};

bool lighter(const MsfProblem::Edge& x, const MsfProblem::Edge& y) {
  return x.w != y.w ? x.w < y.w : x.id < y.id;
}

std::uint64_t sort_cost(std::size_t n) { return n * static_cast<std::uint64_t>(std::bit_width(n) + 1); }

}  // namespace

MsfProblem::Edge MsfProblem::edge_of(const ElementView& v) {
  const auto& p = *v.payload;
  if (p.size() < 3) throw std::invalid_argument("edge " + std::to_string(v.id) + " needs `u v w`");
  return Edge{v.id, p[0], p[1], p[2]};
}

MsfProblem::State MsfProblem::compute(const State& parent, const WindowInput& in,
                                      std::uint64_t& units) const {
  std::unordered_map<Element, const Edge*> labelled;
  for (const auto& e : parent.changing) labelled.emplace(e.id, &e);
  auto get = [&](const ElementView& v) {
    auto it = labelled.find(v.id);
    return it == labelled.end() ? edge_of(v) : *it->second;
  };

  std::vector<Edge> fixed = parent.fixed;
  for (const auto& v : in.permanents) fixed.push_back(get(v));
  std::vector<Edge> changing;
  changing.reserve(in.dynamic.size());
  for (const auto& v : in.dynamic) changing.push_back(get(v));
  std::sort(fixed.begin(), fixed.end(), lighter);
  units += sort_cost(fixed.size()) + changing.size();

  State s;
  s.chosen = parent.chosen;
  s.weight = parent.weight;
  s.count = parent.count;

  // Fixed edges in the forest even when every changing edge is present
  // (and cheapest) are in it for any subset of them.
  LabelDsu with_changing, merged;
  for (const auto& e : changing) with_changing.unite(e.a, e.b);
  std::vector<Edge> rest;
  for (const auto& e : fixed) {
    if (with_changing.unite(e.a, e.b)) {
      merged.unite(e.a, e.b);
      s.chosen = std::make_shared<const Chosen>(Chosen{e.id, s.chosen});
      s.weight += e.w;
      ++s.count;
    } else {
      rest.push_back(e);
    }
  }
  // Fixed edges outside the forest of the fixed edges alone never enter it.
  LabelDsu alone;
  for (auto e : rest) {
    e.a = merged.find(e.a);
    e.b = merged.find(e.b);
    if (e.a != e.b && alone.unite(e.a, e.b)) s.fixed.push_back(e);
  }
  for (auto e : changing) {
    e.a = merged.find(e.a);
    e.b = merged.find(e.b);
    s.changing.push_back(e);
  }
  return s;
}

MsfProblem::State MsfProblem::finalize(const State& leaf, std::span<const ElementView> alive,
                                       std::uint64_t& units) const {
  std::unordered_map<Element, const Edge*> labelled;
  for (const auto& e : leaf.changing) labelled.emplace(e.id, &e);
  std::vector<Edge> edges = leaf.fixed;
  for (const auto& v : alive) {
    auto it = labelled.find(v.id);
    edges.push_back(it == labelled.end() ? edge_of(v) : *it->second);
  }
  std::sort(edges.begin(), edges.end(), lighter);
  units += sort_cost(edges.size());

  State s;
  s.chosen = leaf.chosen;
  s.weight = leaf.weight;
  s.count = leaf.count;
  LabelDsu dsu;
  for (const auto& e : edges) {
    if (!dsu.unite(e.a, e.b)) continue;
    s.chosen = std::make_shared<const Chosen>(Chosen{e.id, s.chosen});
    s.weight += e.w;
    ++s.count;
  }
  return s;
}

Answer MsfProblem::output(const State& s) const {
  Answer out{s.weight};
  for (const Chosen* c = s.chosen.get(); c; c = c->next.get()) out.push_back(c->id);
  std::sort(out.begin() + 1, out.end());
  return out;
}

}  // namespace pud
