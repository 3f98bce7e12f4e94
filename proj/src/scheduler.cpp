#include "pud/scheduler.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace pud {

SlotLine::SlotLine(Day T)
    : T_(T),
      taken_(static_cast<std::size_t>(T) + 2, 0),
      parent_(static_cast<std::size_t>(T) + 2),
      rank_(static_cast<std::size_t>(T) + 2, 0),
      block_(static_cast<std::size_t>(T) + 2),
      next_overflow_(T + 1) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

Day SlotLine::find(Day d) {
  ++ops_;
  Day root = d;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[d] != root) {
    Day next = parent_[d];
    parent_[d] = root;
    d = next;
  }
  return root;
}

// Adds d to the occupied runs, merging with neighbours.
void SlotLine::take(Day d) {
  taken_[d] = 1;
  Day root = d;
  Block meta{d - 1, d + 1};
  auto link = [&](Day other) {
    ++ops_;
    if (rank_[root] < rank_[other]) std::swap(root, other);
    parent_[other] = root;
    if (rank_[root] == rank_[other]) ++rank_[root];
  };
  if (d - 1 >= 1 && taken_[d - 1]) {
    Day l = find(d - 1);
    meta.left = block_[l].left;
    link(l);
  }
  if (d + 1 <= T_ && taken_[d + 1]) {
    Day r = find(d + 1);
    meta.right = block_[r].right;
    link(r);
  }
  block_[root] = meta;
}

Day SlotLine::overflow() { return next_overflow_++; }

Day SlotLine::clamp_request(Day requested) const { return std::max<Day>(requested, 1); }

void SlotLine::occupy(Day d) {
  if (is_free(d)) take(d);
}

Day SlotLine::assign_harmonic(Day requested, std::mt19937_64& rng) {
  if (requested > T_) return overflow();
  Day p = clamp_request(requested);
  if (!taken_[p]) {
    take(p);
    return p;
  }
  const Block b = block_[find(p)];
  const bool has_left = b.left >= 1;
  const double d_left = p - b.left;
  const double d_right = b.right - p;
  bool go_left = false;
  if (has_left) {
    // P(left) = (1/d_left) / (1/d_left + 1/d_right)
    std::uniform_real_distribution<double> u(0.0, 1.0);
    go_left = u(rng) < d_right / (d_left + d_right);
  }
  if (go_left) {
    take(b.left);
    return b.left;
  }
  if (b.right > T_) return overflow();
  take(b.right);
  return b.right;
}

Day SlotLine::assign_greedy(Day requested) {
  if (requested > T_) return overflow();
  Day p = clamp_request(requested);
  if (!taken_[p]) {
    take(p);
    return p;
  }
  const Block b = block_[find(p)];
  if (b.left >= 1 && p - b.left <= b.right - p) {
    take(b.left);
    return b.left;
  }
  if (b.right > T_) return overflow();
  take(b.right);
  return b.right;
}

namespace {

template <class Assign>
Assignment assign_per_kind(const std::vector<Prediction>& predictions, Day T, Assign assign,
                           ScheduleStats* stats) {
  SlotLine ins(T), del(T);
  Assignment out{T, predictions};
  Day padding_slot = T + 1;
  for (auto& item : out.items) {
    if (item.padding()) {
      item.day = padding_slot;
      continue;
    }
    item.day = assign(item.event.kind == Kind::Insert ? ins : del, item.day);
  }
  if (stats) stats->union_find_ops += ins.ops() + del.ops();
  return out;
}

}  // namespace

Assignment harmonic_assign(const std::vector<Prediction>& predictions, Day T, std::uint64_t seed,
                           ScheduleStats* stats) {
  std::mt19937_64 rng(seed);
  return assign_per_kind(
      predictions, T, [&](SlotLine& line, Day d) { return line.assign_harmonic(d, rng); }, stats);
}

Assignment greedy_assign(const std::vector<Prediction>& predictions, Day T, ScheduleStats* stats) {
  return assign_per_kind(
      predictions, T, [](SlotLine& line, Day d) { return line.assign_greedy(d); }, stats);
}

namespace {

// Index lists per element, each kind sorted by (day, input position).
struct ElementEvents {
  std::vector<std::size_t> ins;
  std::vector<std::size_t> del;
};

std::unordered_map<Element, ElementEvents> group_by_element(const Assignment& a,
                                                            std::vector<Element>* order) {
  std::unordered_map<Element, ElementEvents> by;
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    const auto& it = a.items[i];
    auto [pos, fresh] = by.try_emplace(it.event.element);
    if (fresh && order) order->push_back(it.event.element);
    (it.event.kind == Kind::Insert ? pos->second.ins : pos->second.del).push_back(i);
  }
  auto by_day = [&](std::size_t x, std::size_t y) {
    return std::pair(a.items[x].day, x) < std::pair(a.items[y].day, y);
  };
  for (auto& [e, ev] : by) {
    std::sort(ev.ins.begin(), ev.ins.end(), by_day);
    std::sort(ev.del.begin(), ev.del.end(), by_day);
  }
  return by;
}

// Alternating chain starting with the kind that changes the initial status.
// Entries that cannot be placed in the chain are returned in `extras`.
std::vector<std::size_t> build_chain(const ElementEvents& ev, bool present,
                                     std::vector<std::size_t>& extras) {
  const auto& first = present ? ev.del : ev.ins;
  const auto& second = present ? ev.ins : ev.del;
  const std::size_t n_first = std::min(first.size(), second.size() + 1);
  const std::size_t n_second = std::min(second.size(), n_first);
  std::vector<std::size_t> chain;
  for (std::size_t j = 0; j < n_first; ++j) {
    chain.push_back(first[j]);
    if (j < n_second) chain.push_back(second[j]);
  }
  extras.insert(extras.end(), first.begin() + static_cast<std::ptrdiff_t>(n_first), first.end());
  extras.insert(extras.end(), second.begin() + static_cast<std::ptrdiff_t>(n_second), second.end());
  return chain;
}

}  // namespace

Assignment fix_ordering(const Assignment& a, const std::unordered_set<Element>* initially_present) {
  Assignment out = a;
  const Day T = a.T;
  std::set<Day> open[2];
  for (Day d = 1; d <= T; ++d) {
    open[0].insert(d);
    open[1].insert(d);
  }
  for (const auto& it : a.items) {
    if (it.day >= 1 && it.day <= T) open[it.event.kind == Kind::Insert ? 0 : 1].erase(it.day);
  }

  std::vector<Element> order;
  auto by = group_by_element(a, &order);
  Day overflow = T + 1;
  for (Element e : order) {
    const bool present = initially_present && initially_present->count(e);
    std::vector<std::size_t> extras;
    auto chain = build_chain(by[e], present, extras);
    auto move_to = [&](std::size_t idx, Day d) {
      auto& item = out.items[idx];
      auto& line = open[item.event.kind == Kind::Insert ? 0 : 1];
      if (item.day >= 1 && item.day <= T) line.insert(item.day);
      if (d <= T) line.erase(d);
      item.day = d;
    };
    for (std::size_t idx : extras) move_to(idx, overflow);
    Day prev = 0;
    for (std::size_t idx : chain) {
      auto& item = out.items[idx];
      if (item.day < prev) {
        auto& line = open[item.event.kind == Kind::Insert ? 0 : 1];
        // The slot being vacated is a valid target too.
        if (item.day >= 1 && item.day <= T) line.insert(item.day);
        auto slot = line.lower_bound(prev);
        move_to(idx, slot == line.end() ? overflow : *slot);
      }
      prev = item.day;
    }
  }
  return out;
}

Feasibility check_feasible(const Assignment& a, const std::unordered_set<Element>* initially_present) {
  std::vector<char> ins(static_cast<std::size_t>(a.T) + 1, 0), del(static_cast<std::size_t>(a.T) + 1, 0);
  for (const auto& it : a.items) {
    if (it.day < 1) return {false, "day before the horizon"};
    if (it.day > a.T) continue;
    auto& slot = it.event.kind == Kind::Insert ? ins[it.day] : del[it.day];
    if (slot) {
      return {false, std::string("two ") + (it.event.kind == Kind::Insert ? "insertions" : "deletions") +
                         " on day " + std::to_string(it.day)};
    }
    slot = 1;
  }
  auto by = group_by_element(a, nullptr);
  for (auto& [e, ev] : by) {
    const bool present = initially_present && initially_present->count(e);
    std::vector<std::size_t> all(ev.ins);
    all.insert(all.end(), ev.del.begin(), ev.del.end());
    std::vector<std::size_t> horizon;
    for (auto idx : all)
      if (a.items[idx].day <= a.T) horizon.push_back(idx);
    // Within a day the chain order decides, so sort by day then alternate.
    std::sort(horizon.begin(), horizon.end(), [&](std::size_t x, std::size_t y) {
      return a.items[x].day < a.items[y].day;
    });
    std::map<Day, std::pair<int, int>> per_day;  // insertions, deletions
    for (auto idx : horizon)
      (a.items[idx].event.kind == Kind::Insert ? per_day[a.items[idx].day].first
                                               : per_day[a.items[idx].day].second)++;
    bool alive = present;
    for (auto& [day, counts] : per_day) {
      auto [ni, nd] = counts;
      // A same-day pair is fine in either order, as long as it is one of each.
      if (ni + nd == 1) {
        if ((ni == 1) == alive)
          return {false, "element " + std::to_string(e) + " out of order on day " + std::to_string(day)};
        alive = !alive;
      }
    }
  }
  return {};
}

std::int64_t displacement(const std::vector<Prediction>& requested, const Assignment& a) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < requested.size(); ++i) {
    if (requested[i].padding()) continue;
    total += std::abs(static_cast<std::int64_t>(requested[i].day) - a.items[i].day);
  }
  return total;
}

std::int64_t max_displacement(const std::vector<Prediction>& requested, const Assignment& a) {
  std::int64_t worst = 0;
  for (std::size_t i = 0; i < requested.size(); ++i) {
    if (requested[i].padding()) continue;
    worst = std::max<std::int64_t>(worst, std::abs(static_cast<std::int64_t>(requested[i].day) - a.items[i].day));
  }
  return worst;
}

namespace {

// Indices of non-padding entries of one kind, sorted by requested day.
std::vector<std::size_t> sorted_kind(const std::vector<Prediction>& ps, Kind k) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (!ps[i].padding() && ps[i].event.kind == k) idx.push_back(i);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return ps[x].day < ps[y].day;
  });
  return idx;
}

}  // namespace

Assignment optimal_offline_assign(const std::vector<Prediction>& predictions, Day T) {
  Assignment out{T, predictions};
  for (auto& it : out.items)
    if (it.padding()) it.day = T + 1;
  for (Kind k : {Kind::Insert, Kind::Delete}) {
    auto idx = sorted_kind(predictions, k);
    // Requests beyond the line's capacity spill past T in order.
    std::size_t n = std::min<std::size_t>(idx.size(), static_cast<std::size_t>(T));
    for (std::size_t j = n; j < idx.size(); ++j) out.items[idx[j]].day = T + 1 + static_cast<Day>(j - n);
    if (n == 0) continue;
    // An optimal matching on a line never crosses, so sorted requests take
    // increasing days. best[d] = cost of placing the first i requests on days <= d.
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> prev(static_cast<std::size_t>(T) + 1, 0), cur(prev.size());
    std::vector<std::vector<bool>> placed(n, std::vector<bool>(prev.size(), false));
    for (std::size_t i = 0; i < n; ++i) {
      const Day p = predictions[idx[i]].day;
      cur[0] = inf;
      for (Day d = 1; d <= T; ++d) {
        std::int64_t skip = cur[d - 1];
        std::int64_t use = prev[d - 1] >= inf ? inf : prev[d - 1] + std::abs(static_cast<std::int64_t>(p) - d);
        if (static_cast<std::size_t>(d) < i + 1) use = inf;
        if (use < skip) {
          cur[d] = use;
          placed[i][d] = true;
        } else {
          cur[d] = skip;
        }
      }
      std::swap(prev, cur);
    }
    Day d = T;
    for (std::size_t i = n; i-- > 0;) {
      while (!placed[i][d]) --d;
      out.items[idx[i]].day = d;
      --d;
    }
  }
  return out;
}

std::int64_t min_max_displacement(const std::vector<Prediction>& predictions, Day T) {
  std::int64_t answer = 0;
  for (Kind k : {Kind::Insert, Kind::Delete}) {
    auto idx = sorted_kind(predictions, k);
    if (idx.size() > static_cast<std::size_t>(T)) idx.resize(static_cast<std::size_t>(T));
    // Sorted requests with equal-width windows: earliest-fit is exact.
    auto fits = [&](std::int64_t D) {
      std::int64_t last = 0;
      for (auto i : idx) {
        std::int64_t p = predictions[i].day;
        std::int64_t d = std::max(last + 1, std::max<std::int64_t>(1, p - D));
        if (d > std::min<std::int64_t>(T, p + D)) return false;
        last = d;
      }
      return true;
    };
    std::int64_t lo = 0, hi = T;
    while (lo < hi) {
      std::int64_t mid = (lo + hi) / 2;
      if (fits(mid)) hi = mid;
      else lo = mid + 1;
    }
    answer = std::max(answer, lo);
  }
  return answer;
}

}  // namespace pud
