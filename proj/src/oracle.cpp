#include "pud/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace pud {

ProblemKind parse_problem(const std::string& name) {
  if (name == "counter") return ProblemKind::Counter;
  if (name == "connectivity") return ProblemKind::Connectivity;
  if (name == "msf") return ProblemKind::Msf;
  if (name == "decremental-max" || name == "max") return ProblemKind::DecrementalMax;
  throw std::invalid_argument("unknown problem `" + name + "`");
}

std::string problem_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Counter: return "counter";
    case ProblemKind::Connectivity: return "connectivity";
    case ProblemKind::Msf: return "msf";
    case ProblemKind::DecrementalMax: return "decremental-max";
  }
  return "?";
}

void BruteForce::apply(const Event& e) {
  if (e.kind == Kind::Insert) {
    if (!active_.emplace(e.element, e.payload).second)
      throw std::invalid_argument("element " + std::to_string(e.element) + " inserted twice");
  } else if (active_.erase(e.element) == 0) {
    throw std::invalid_argument("element " + std::to_string(e.element) + " deleted while absent");
  }
}

namespace {

struct PlainDsu {
  std::vector<std::int64_t> parent;
  explicit PlainDsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::int64_t find(std::int64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::int64_t a, std::int64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

Answer BruteForce::answer() {
  work_ += active_.size() + 1;
  switch (kind_) {
    case ProblemKind::Counter:
      return {static_cast<std::int64_t>(active_.size())};
    case ProblemKind::Connectivity: {
      PlainDsu dsu(static_cast<std::size_t>(vertices_));
      std::int64_t components = vertices_;
      for (const auto& [id, p] : active_)
        if (dsu.unite(p.at(0), p.at(1))) --components;
      return {components};
    }
    case ProblemKind::Msf: {
      std::vector<std::tuple<std::int64_t, Element, std::int64_t, std::int64_t>> edges;
      for (const auto& [id, p] : active_) edges.emplace_back(p.at(2), id, p.at(0), p.at(1));
      std::sort(edges.begin(), edges.end());
      PlainDsu dsu(static_cast<std::size_t>(vertices_));
      Answer out{0};
      for (const auto& [w, id, a, b] : edges) {
        if (!dsu.unite(a, b)) continue;
        out[0] += w;
        out.push_back(id);
      }
      std::sort(out.begin() + 1, out.end());
      return out;
    }
    case ProblemKind::DecrementalMax: {
      std::int64_t best = std::numeric_limits<std::int64_t>::min();
      for (const auto& [id, p] : active_) best = std::max(best, p.at(0));
      return {best};
    }
  }
  return {};
}

std::vector<Answer> brute_force_outputs(ProblemKind kind, std::int32_t vertices,
                                        const std::vector<RealEvent>& stream) {
  BruteForce bf(kind, vertices);
  std::vector<Answer> out;
  out.reserve(stream.size());
  for (const auto& r : stream) {
    bf.apply(r.event);
    out.push_back(bf.answer());
  }
  return out;
}

}  // namespace pud
