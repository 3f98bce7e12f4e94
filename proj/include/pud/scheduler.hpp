#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "pud/core_model.hpp"

namespace pud {

// One server per day on [1, T]. Occupied days are grouped into maximal runs
// kept in a union-find; each run's root knows the nearest open day on either
// side. Days 0 and T+1 bound the line; T+1 stands for the overflow region
// past the horizon, which never fills up.
class SlotLine {
 public:
  explicit SlotLine(Day T);

  Day horizon() const { return T_; }
  bool is_free(Day d) const { return d >= 1 && d <= T_ && !taken_[d]; }

  // Randomized nearest-neighbour rule: the requested day if open, otherwise
  // the nearest open day on the left or right with probability inversely
  // proportional to its distance. Returns a day > T when sent to overflow.
  Day assign_harmonic(Day requested, std::mt19937_64& rng);

  // Nearest open day, ties to the earlier one.
  Day assign_greedy(Day requested);

  // Marks a day used without serving a request (days that have passed).
  void occupy(Day d);

  // Union-find find and link calls made so far.
  std::uint64_t ops() const { return ops_; }

 private:
  struct Block {
    Day left;
    Day right;
  };

  Day find(Day d);
  void take(Day d);
  Day overflow();
  Day clamp_request(Day requested) const;

  Day T_;
  std::vector<char> taken_;
  std::vector<Day> parent_;
  std::vector<std::uint8_t> rank_;
  std::vector<Block> block_;
  Day next_overflow_;
  std::uint64_t ops_ = 0;
};

// A prediction list with every entry's day replaced by its assigned day.
// Days past T are overflow slots outside the horizon.
struct Assignment {
  Day T = 1;
  std::vector<Prediction> items;
};

struct Feasibility {
  bool ok = true;
  std::string reason;
};

// At most one insertion and one deletion per day inside [1, T], and each
// element's events alternate insert/delete in day order.
Feasibility check_feasible(const Assignment& a,
                           const std::unordered_set<Element>* initially_present = nullptr);

std::int64_t displacement(const std::vector<Prediction>& requested, const Assignment& a);

// Largest per-entry distance between requested and assigned day.
std::int64_t max_displacement(const std::vector<Prediction>& requested, const Assignment& a);

struct ScheduleStats {
  std::uint64_t union_find_ops = 0;
};

// Insertions and deletions use separate slot lines. Predictions are served in
// input order; padding entries go straight to overflow.
Assignment harmonic_assign(const std::vector<Prediction>& predictions, Day T, std::uint64_t seed,
                           ScheduleStats* stats = nullptr);
Assignment greedy_assign(const std::vector<Prediction>& predictions, Day T,
                         ScheduleStats* stats = nullptr);

// Per element, pairs sorted insertions and deletions into an alternating
// chain and moves any event dated before its predecessor onto the nearest
// open slot of its kind at or after the predecessor's day. Events left
// without a partner move past the horizon.
Assignment fix_ordering(const Assignment& a,
                        const std::unordered_set<Element>* initially_present = nullptr);

// Minimum total displacement assignment per kind (test oracle).
Assignment optimal_offline_assign(const std::vector<Prediction>& predictions, Day T);

// Minimum over feasible per-kind assignments of the largest displacement.
std::int64_t min_max_displacement(const std::vector<Prediction>& predictions, Day T);

}  // namespace pud
