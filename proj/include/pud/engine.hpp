#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pud/core_model.hpp"
#include "pud/partition_tree.hpp"
#include "pud/scheduler.hpp"
#include "pud/work.hpp"

namespace pud {

struct ElementView {
  Element id = 0;
  const Payload* payload = nullptr;
};

// What a window computation may look at besides its parent's state.
// `permanents` are alive throughout the window and were dynamic in the
// parent; `dynamic` have at least one scheduled event inside the window.
struct WindowInput {
  Day start = 1;
  Day end = 1;
  std::span<const ElementView> permanents;
  std::span<const ElementView> dynamic;
};

// A divide-and-conquer problem over time. `compute` builds a window's state
// from its parent's, `finalize` applies the elements alive after a leaf's
// day that were still dynamic there. Both add their own work to `units`.
template <class P>
concept DncProblem = requires(const P& p, const typename P::State& s, const WindowInput& in,
                              std::span<const ElementView> alive, std::uint64_t& units) {
  { p.base_state() } -> std::convertible_to<typename P::State>;
  { p.compute(s, in, units) } -> std::convertible_to<typename P::State>;
  { p.finalize(s, alive, units) } -> std::convertible_to<typename P::State>;
  { p.output(s) } -> std::convertible_to<Answer>;
  { p.state_size(s) } -> std::convertible_to<std::size_t>;
};

// Problems whose window state depends on the dynamic set itself, not only
// on the permanents, opt in here.
template <class P>
constexpr bool uses_dynamic_set() {
  if constexpr (requires { P::kUsesDynamicSet; }) return P::kUsesDynamicSet;
  else return false;
}

enum class Scheduling { Harmonic, Greedy, Exact };

struct EngineOptions {
  Day T = 1;
  std::uint64_t seed = 1;
  Scheduling scheduling = Scheduling::Harmonic;
  // Insertions arrive unannounced, each carrying a predicted deletion day;
  // windows are computed on their first day.
  bool just_in_time = false;
  // Unknown elements showing up in the stream start out present, which
  // changes the problem's base state (the anti-element view).
  bool unknown_elements_present = false;
};

struct PresentElement {
  Element id = 0;
  Payload payload;
};

inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <DncProblem P>
class Engine {
 public:
  using State = typename P::State;
  using NodeId = PartitionTree::NodeId;

  Engine(P problem, EngineOptions opt, const std::vector<Prediction>& predictions,
         const std::vector<PresentElement>& present = {})
      : problem_(std::move(problem)),
        opt_(opt),
        tree_(PartitionTree::build(opt.T, mix_seed(opt.seed))),
        rng_(mix_seed(opt.seed + 1)),
        ins_line_(opt.T),
        del_line_(opt.T),
        buckets_(static_cast<std::size_t>(opt.T) + 1),
        mem_(tree_.size()) {
    for (const auto& e : present) index_of(e.id, &e.payload, true);
    preprocess(predictions);
  }

  // Processes day t's real event and returns the answer for the active set
  // after day t. For unannounced insertions `predicted` is the day the
  // element is expected to be deleted.
  Answer run_day(Day t, const Event& real, Day predicted = kEndOfHorizon) {
    if (t != day_ + 1) throw std::invalid_argument("day " + std::to_string(t) + " out of order");
    if (t > opt_.T) throw std::invalid_argument("day " + std::to_string(t) + " past the horizon");
    day_ = t;
    if (opt_.just_in_time) {
      ins_line_.occupy(t);
      del_line_.occupy(t);
    }
    counters_.max_batch = std::max<std::uint64_t>(counters_.max_batch, buckets_[t].size());

    apply_real(t, real, predicted);
    handle_late(t);
    if (opt_.just_in_time) activate(t);
    return output(t);
  }

  const WorkCounters& counters() const { return counters_; }
  const PartitionTree& tree() const { return tree_; }
  const P& problem() const { return problem_; }
  Day horizon() const { return opt_.T; }
  Day current_day() const { return day_; }

  // State after the last processed day, for queries.
  const State& current_state() const { return *final_; }

  // Introspection used by tests and the CLI.
  std::vector<Element> permanents(NodeId id) const { return ids(mem_[id].perms); }
  std::vector<Element> dynamic(NodeId id) const { return ids(mem_[id].dyn); }
  bool computed(NodeId id) const { return mem_[id].active; }
  const State& window_state(NodeId id) const { return *mem_[id].state; }
  std::size_t scheduled_events(NodeId id) const {
    const auto& n = tree_.node(id);
    std::size_t total = 0;
    for (Day d = n.start; d <= n.end; ++d) total += buckets_[d].size();
    return total;
  }
  std::size_t batch_size(Day d) const { return buckets_[d].size(); }
  // Whether the element is present after the last processed day.
  bool alive(Element e) const {
    auto it = index_.find(e);
    return it != index_.end() && alive_before(recs_[it->second], day_ + 1);
  }
  // Days currently holding the element's pending and realized events.
  std::vector<Day> schedule_of(Element e) const {
    std::vector<Day> out;
    auto it = index_.find(e);
    if (it == index_.end()) return out;
    for (const auto& s : recs_[it->second].chain) out.push_back(s.day);
    return out;
  }

 private:
  struct Slot {
    Day day = 0;
    std::int32_t reschedules = 0;
    bool real = false;
  };
  struct Rec {
    Element id = 0;
    Payload payload;
    bool present = false;
    std::vector<Slot> chain;  // alternating kinds, days non-decreasing
    std::uint32_t realized = 0;
  };
  struct Ref {
    std::uint32_t elem;
    std::uint32_t occ;
  };
  struct Memory {
    std::optional<State> state;
    std::vector<std::uint32_t> dyn;    // sorted element indices
    std::vector<std::uint32_t> perms;  // sorted element indices
    bool active = false;
  };

  std::uint32_t index_of(Element e, const Payload* payload, bool present) {
    auto [it, fresh] = index_.try_emplace(e, static_cast<std::uint32_t>(recs_.size()));
    if (fresh) {
      Rec r;
      r.id = e;
      r.present = present;
      recs_.push_back(std::move(r));
      all_.push_back(it->second);
    }
    Rec& r = recs_[it->second];
    if (payload && r.payload.empty()) r.payload = *payload;
    return it->second;
  }

  std::vector<Element> ids(const std::vector<std::uint32_t>& xs) const {
    std::vector<Element> out;
    for (auto x : xs) out.push_back(recs_[x].id);
    return out;
  }

  Kind expected_kind(const Rec& r, std::size_t occ) const {
    const bool first_is_insert = !r.present;
    return ((occ % 2 == 0) == first_is_insert) ? Kind::Insert : Kind::Delete;
  }

  static bool alive_before(const Rec& r, Day s) {
    auto k = std::partition_point(r.chain.begin(), r.chain.end(),
                                  [s](const Slot& x) { return x.day < s; }) -
             r.chain.begin();
    return r.present != (k % 2 == 1);
  }

  static bool has_event(const Rec& r, Day s, Day e) {
    auto it = std::partition_point(r.chain.begin(), r.chain.end(),
                                   [s](const Slot& x) { return x.day < s; });
    return it != r.chain.end() && it->day <= e;
  }

  void add_ref(std::uint32_t x, std::uint32_t occ) {
    Day d = recs_[x].chain[occ].day;
    if (d <= opt_.T) buckets_[d].push_back({x, occ});
  }

  void move_slot(std::uint32_t x, std::uint32_t occ, Day to) {
    Slot& s = recs_[x].chain[occ];
    if (s.day <= opt_.T) {
      auto& b = buckets_[s.day];
      auto it = std::find_if(b.begin(), b.end(), [&](const Ref& r) { return r.elem == x && r.occ == occ; });
      b.erase(it);
    }
    s.day = to;
    add_ref(x, occ);
  }

  // ---- preprocessing -------------------------------------------------------

  void preprocess(const std::vector<Prediction>& predictions) {
    for (const auto& p : predictions)
      if (!p.padding()) index_of(p.event.element, &p.event.payload, opt_.unknown_elements_present);

    std::unordered_set<Element> present;
    for (const auto& r : recs_)
      if (r.present) present.insert(r.id);

    Assignment a{opt_.T, {}};
    if (opt_.just_in_time) {
      a.items = predictions;
      for (auto& it : a.items) {
        if (it.padding()) continue;
        auto& line = it.event.kind == Kind::Insert ? ins_line_ : del_line_;
        it.day = line.assign_harmonic(it.day, rng_);
      }
      counters_.scheduler_ops = ins_line_.ops() + del_line_.ops();
      a = fix_ordering(a, &present);
    } else if (opt_.scheduling == Scheduling::Exact) {
      a.items = predictions;
      for (auto& it : a.items)
        if (it.day > opt_.T) it.day = opt_.T + 1;
    } else {
      ScheduleStats stats;
      a = opt_.scheduling == Scheduling::Harmonic
              ? harmonic_assign(predictions, opt_.T, mix_seed(opt_.seed + 2), &stats)
              : greedy_assign(predictions, opt_.T, &stats);
      counters_.scheduler_ops = stats.union_find_ops;
      a = fix_ordering(a, &present);
    }
    build_chains(a);

    if (!opt_.just_in_time) compute_subtree(tree_.root(), true, true);
    counters_.preprocess_window_units = counters_.window_units();
    counters_.scheduler_ops_at_start = counters_.scheduler_ops;
  }

  void build_chains(const Assignment& a) {
    std::vector<std::vector<Day>> ins(recs_.size()), del(recs_.size());
    for (const auto& it : a.items) {
      if (it.padding()) continue;
      auto x = index_.at(it.event.element);
      (it.event.kind == Kind::Insert ? ins : del)[x].push_back(it.day);
    }
    for (std::uint32_t x = 0; x < recs_.size(); ++x) {
      Rec& r = recs_[x];
      auto& first = r.present ? del[x] : ins[x];
      auto& second = r.present ? ins[x] : del[x];
      std::sort(first.begin(), first.end());
      std::sort(second.begin(), second.end());
      const std::size_t n_first = std::min(first.size(), second.size() + 1);
      const std::size_t n_second = std::min(second.size(), n_first);
      for (std::size_t j = 0; j < n_first; ++j) {
        r.chain.push_back({first[j], 0, false});
        if (j < n_second) r.chain.push_back({second[j], 0, false});
      }
      for (std::uint32_t occ = 0; occ < r.chain.size(); ++occ) add_ref(x, occ);
    }
  }

  // ---- window computation --------------------------------------------------

  void compute_window(NodeId id) {
    const auto& n = tree_.node(id);
    const bool root = n.parent == PartitionTree::kNone;
    const std::vector<std::uint32_t>& candidates = root ? all_ : mem_[n.parent].dyn;
    const State& parent = root ? *base_ : *mem_[n.parent].state;

    Memory& m = mem_[id];
    m.dyn.clear();
    m.perms.clear();
    for (auto x : candidates) {
      const Rec& r = recs_[x];
      if (has_event(r, n.start, n.end)) m.dyn.push_back(x);
      else if (alive_before(r, n.start)) m.perms.push_back(x);
    }
    auto views = [&](const std::vector<std::uint32_t>& xs) {
      std::vector<ElementView> v;
      v.reserve(xs.size());
      for (auto x : xs) v.push_back({recs_[x].id, &recs_[x].payload});
      return v;
    };
    auto pv = views(m.perms);
    auto dv = views(m.dyn);
    std::uint64_t units = 0;
    WindowInput in{n.start, n.end, pv, dv};
    m.state.emplace(problem_.compute(parent, in, units));
    m.active = true;
    counters_.window_compute_units += candidates.size() + units;
    counters_.clone_units += problem_.state_size(parent);
    ++counters_.windows_computed;
  }

  // Recomputes `id` (optionally) and every computed descendant, breadth first.
  void compute_subtree(NodeId id, bool include_self, bool force = false) {
    if (!base_) base_.emplace(problem_.base_state());
    std::deque<NodeId> queue;
    auto push_children = [&](NodeId w) {
      const auto& n = tree_.node(w);
      if (n.leaf()) return;
      queue.push_back(n.left);
      queue.push_back(n.right);
    };
    if (include_self) queue.push_back(id);
    else push_children(id);
    while (!queue.empty()) {
      NodeId w = queue.front();
      queue.pop_front();
      if (!force && !mem_[w].active) continue;
      compute_window(w);
      push_children(w);
    }
  }

  void retrigger(Day t1, Day t2) {
    ++counters_.retrigger_calls;
    t1 = std::min(t1, opt_.T);
    t2 = std::min(t2, opt_.T);
    compute_subtree(tree_.smallest_window(std::min(t1, t2), std::max(t1, t2)), false);
  }

  void full_recompute() {
    ++counters_.retrigger_calls;
    ++counters_.full_recomputes;
    if (!mem_[tree_.root()].active) return;
    compute_subtree(tree_.root(), true);
  }

  bool is_ancestor_or_self(NodeId a, NodeId b) const {
    while (b != PartitionTree::kNone) {
      if (a == b) return true;
      b = tree_.node(b).parent;
    }
    return false;
  }

  // Element x just gained an event on day c, which no window knew about.
  // Windows on the path to c's leaf that lack x in their dynamic set are
  // brought up to date; if x was permanent in one of them, that subtree is
  // recomputed.
  void enter(std::uint32_t x, Day c, bool insertion_only) {
    std::vector<NodeId> path;
    for (NodeId w = tree_.leaf(c); w != PartitionTree::kNone; w = tree_.node(w).parent) path.push_back(w);
    std::reverse(path.begin(), path.end());

    NodeId recomputed = PartitionTree::kNone;
    for (std::size_t i = 0; i < path.size(); ++i) {
      Memory& m = mem_[path[i]];
      if (!m.active) break;
      if (std::binary_search(m.dyn.begin(), m.dyn.end(), x)) continue;
      const bool was_permanent = std::binary_search(m.perms.begin(), m.perms.end(), x);
      if (was_permanent || uses_dynamic_set<P>()) {
        recomputed = path[i];
        if (tree_.node(recomputed).parent == PartitionTree::kNone) {
          full_recompute();
        } else {
          ++counters_.retrigger_calls;
          compute_subtree(recomputed, true);
        }
      } else {
        for (std::size_t j = i; j < path.size() && mem_[path[j]].active; ++j) {
          auto& dyn = mem_[path[j]].dyn;
          dyn.insert(std::lower_bound(dyn.begin(), dyn.end(), x), x);
        }
      }
      break;
    }
    // Later windows see x's status flip after c.
    if (!opt_.just_in_time && !insertion_only) {
      NodeId later = tree_.smallest_window(c, opt_.T);
      if (recomputed == PartitionTree::kNone || !is_ancestor_or_self(recomputed, later)) retrigger(c, opt_.T);
    }
  }

  // ---- day handling --------------------------------------------------------

  void apply_real(Day t, const Event& real, Day predicted) {
    const bool known = index_.count(real.element) > 0;
    if (!known && opt_.unknown_elements_present) {
      reinitialize_with(t, real);
      return;
    }
    const std::uint32_t x = index_of(real.element, &real.payload, false);
    Rec& r = recs_[x];
    const std::uint32_t occ = r.realized;
    if (real.kind != expected_kind(r, occ))
      throw std::invalid_argument("element " + std::to_string(real.element) + " cannot take a " +
                                  (real.kind == Kind::Insert ? "insertion" : "deletion") + " on day " +
                                  std::to_string(t));
    if (occ < r.chain.size()) {
      Slot& s = r.chain[occ];
      const Day old = s.day;
      s.real = true;
      if (old != t) {
        ++counters_.early_calls;
        move_slot(x, occ, t);
        if (old <= opt_.T) retrigger(t, old);
        else enter(x, t, false);
      }
    } else {
      r.chain.push_back({t, 0, true});
      add_ref(x, occ);
      enter(x, t, opt_.just_in_time && real.kind == Kind::Insert);
    }
    ++recs_[x].realized;
    if (opt_.just_in_time) schedule_followup(x, t, real.kind, predicted);
  }

  // Unannounced insertions bring the day their element should leave again.
  void schedule_followup(std::uint32_t x, Day t, Kind kind, Day predicted) {
    Rec& r = recs_[x];
    if (r.chain.size() != r.realized || kind != Kind::Insert) return;
    Day want = predicted == kEndOfHorizon ? kEndOfHorizon : std::max<Day>(predicted, t + 1);
    Day d = want > opt_.T ? opt_.T + 1 : del_line_.assign_harmonic(want, rng_);
    if (want <= opt_.T) counters_.scheduler_ops = ins_line_.ops() + del_line_.ops();
    r.chain.push_back({d, 0, false});
    add_ref(x, static_cast<std::uint32_t>(r.chain.size() - 1));
  }

  // A present-from-the-start element nobody announced: the base state
  // changes, so everything computed so far is rebuilt once.
  void reinitialize_with(Day t, const Event& real) {
    const std::uint32_t x = index_of(real.element, &real.payload, true);
    if constexpr (requires(P& p) { p.add_to_ground(ElementView{}); }) {
      problem_.add_to_ground(ElementView{recs_[x].id, &recs_[x].payload});
    }
    Rec& r = recs_[x];
    if (real.kind != expected_kind(r, 0)) throw std::invalid_argument("unknown element must leave first");
    r.chain.push_back({t, 0, true});
    add_ref(x, 0);
    r.realized = 1;
    base_.emplace(problem_.base_state());
    ++counters_.reinitializations;
    full_recompute();
  }

  void handle_late(Day t) {
    std::vector<Ref> late;
    for (const Ref& ref : buckets_[t])
      if (!recs_[ref.elem].chain[ref.occ].real) late.push_back(ref);
    std::sort(late.begin(), late.end(), [](const Ref& a, const Ref& b) {
      return std::pair(a.elem, a.occ) < std::pair(b.elem, b.occ);
    });
    for (const Ref& ref : late) {
      auto& chain = recs_[ref.elem].chain;
      if (chain[ref.occ].day != t || chain[ref.occ].real) continue;
      ++counters_.late_calls;
      const std::int32_t i = chain[ref.occ].reschedules + 1;
      const std::int64_t jump = i >= 40 ? (std::int64_t{1} << 40) : (std::int64_t{1} << i);
      const Day next = t == opt_.T ? opt_.T + 1 : static_cast<Day>(std::min<std::int64_t>(t + jump, opt_.T));
      move_slot(ref.elem, ref.occ, next);
      chain[ref.occ].reschedules = i;
      ++counters_.reschedules;
      // Later events of the same element may not precede it.
      for (std::uint32_t k = ref.occ + 1; k < chain.size() && chain[k].day < next; ++k) {
        move_slot(ref.elem, k, next);
        ++chain[k].reschedules;
        ++counters_.reschedules;
      }
      if (t == opt_.T) {
        ++counters_.retrigger_calls;
        if (mem_[tree_.leaf(t)].active) compute_window(tree_.leaf(t));
      } else {
        retrigger(t, next);
      }
    }
  }

  void activate(Day t) {
    std::vector<NodeId> fresh;
    for (NodeId w = tree_.leaf(t); w != PartitionTree::kNone && tree_.node(w).start == t;
         w = tree_.node(w).parent)
      fresh.push_back(w);
    if (!base_) base_.emplace(problem_.base_state());
    for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) compute_window(*it);
  }

  Answer output(Day t) {
    const NodeId leaf = tree_.leaf(t);
    const Memory& m = mem_[leaf];
    std::vector<ElementView> alive;
    for (auto x : m.dyn)
      if (alive_before(recs_[x], t + 1)) alive.push_back({recs_[x].id, &recs_[x].payload});
    std::uint64_t units = 0;
    final_.emplace(problem_.finalize(*m.state, alive, units));
    counters_.output_units += units + problem_.state_size(*m.state);
    return problem_.output(*final_);
  }

  P problem_;
  EngineOptions opt_;
  PartitionTree tree_;
  std::mt19937_64 rng_;
  SlotLine ins_line_;
  SlotLine del_line_;
  std::vector<Rec> recs_;
  std::unordered_map<Element, std::uint32_t> index_;
  std::vector<std::uint32_t> all_;
  std::vector<std::vector<Ref>> buckets_;
  std::vector<Memory> mem_;
  std::optional<State> base_;
  std::optional<State> final_;
  WorkCounters counters_;
  Day day_ = 0;
};

}  // namespace pud
