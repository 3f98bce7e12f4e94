#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace pud {

using Answer = std::vector<std::int64_t>;

// Machine-independent work measure. A unit is one element examined or
// inserted by a window computation, one word of cloned state, one
// union-find call, or one reschedule.
struct WorkCounters {
  std::uint64_t window_compute_units = 0;
  std::uint64_t clone_units = 0;
  std::uint64_t retrigger_calls = 0;
  std::uint64_t reschedules = 0;
  std::uint64_t scheduler_ops = 0;
  std::uint64_t output_units = 0;
  std::uint64_t windows_computed = 0;
  std::uint64_t early_calls = 0;
  std::uint64_t late_calls = 0;
  std::uint64_t full_recomputes = 0;
  std::uint64_t reinitializations = 0;
  std::uint64_t max_batch = 0;
  // Snapshots taken when preprocessing ends.
  std::uint64_t preprocess_window_units = 0;
  std::uint64_t scheduler_ops_at_start = 0;

  std::uint64_t window_units() const { return window_compute_units + clone_units; }
  std::uint64_t preprocess_units() const { return preprocess_window_units + scheduler_ops_at_start; }
  std::uint64_t retrigger_units() const { return window_units() - preprocess_window_units; }
  std::uint64_t total_units() const {
    return window_units() + scheduler_ops + reschedules + output_units;
  }

  // Flat `key=value` lines.
  void dump(std::ostream& out) const;
};

}  // namespace pud
