#include "pud/core_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <tuple>

namespace pud {

std::int64_t l1_error_single_key(std::vector<Day> predicted, std::vector<Day> real,
                                 Day T) {
  std::sort(predicted.begin(), predicted.end());
  std::sort(real.begin(), real.end());
  auto& a = predicted.size() <= real.size() ? predicted : real;
  auto& b = predicted.size() <= real.size() ? real : predicted;
  const std::size_t n = a.size(), m = b.size();
  const auto unmatched = static_cast<std::int64_t>(m - n) * T;
  if (n == m) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += std::abs(static_cast<std::int64_t>(a[i]) - b[i]);
    return total;
  }
  // Every short-side event is matched (a pair never costs more than T); the
  // best pairing is order-preserving, so pick which long-side events to skip.
  constexpr std::int64_t kInf = INT64_MAX / 4;
  std::vector<std::int64_t> row(m + 1, 0), next(m + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    next[i - 1] = kInf;
    for (std::size_t j = i; j <= m; ++j)
      next[j] = std::min(next[j - 1], row[j - 1] + std::abs(static_cast<std::int64_t>(a[i - 1]) - b[j - 1]));
    std::swap(row, next);
  }
  return row[m] + unmatched;
}

std::int64_t l1_error(const std::vector<Prediction>& predicted,
                      const std::vector<RealEvent>& realized, Day T) {
  std::map<std::pair<Element, Kind>, std::pair<std::vector<Day>, std::vector<Day>>> keyed;
  for (const auto& p : predicted) {
    if (p.padding()) continue;
    keyed[{p.event.element, p.event.kind}].first.push_back(p.day);
  }
  for (const auto& r : realized) keyed[{r.event.element, r.event.kind}].second.push_back(r.day);

  std::int64_t total = 0;
  for (auto& [key, days] : keyed)
    total += l1_error_single_key(std::move(days.first), std::move(days.second), T);
  return total;
}

namespace {

using Entry = std::tuple<Element, Kind, Day>;

std::multiset<Entry> entries_of(const PredictionBundle& b) {
  std::multiset<Entry> out;
  for (const auto& p : b.predictions) out.emplace(p.event.element, p.event.kind, p.day);
  return out;
}

}  // namespace

BundleCheck validate_bundle_sequence(const std::vector<PredictionBundle>& bundles) {
  std::multiset<Entry> prev;
  for (std::size_t j = 0; j < bundles.size(); ++j) {
    const auto& b = bundles[j];
    auto cur = entries_of(b);
    std::multiset<Entry> fresh = cur;
    if (j > 0) {
      if (b.predictions.size() != 2 * bundles[j - 1].predictions.size())
        return {false, b.index, "bundle size is not twice the previous bundle"};
      for (const auto& e : prev) {
        auto it = fresh.find(e);
        if (it == fresh.end()) return {false, b.index, "bundle misses an entry of the previous bundle"};
        fresh.erase(it);
      }
    }
    for (const auto& [element, kind, day] : fresh) {
      if (day != kEndOfHorizon && day < b.delivery_day)
        return {false, b.index, "prediction dated before the bundle's delivery day"};
    }
    prev = std::move(cur);
  }
  return {};
}

}  // namespace pud
