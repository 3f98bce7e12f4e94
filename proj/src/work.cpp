#include "pud/work.hpp"

#include <ostream>

namespace pud {

void WorkCounters::dump(std::ostream& out) const {
  out << "window_compute_units=" << window_compute_units << '\n'
      << "clone_units=" << clone_units << '\n'
      << "retrigger_calls=" << retrigger_calls << '\n'
      << "reschedules=" << reschedules << '\n'
      << "scheduler_ops=" << scheduler_ops << '\n'
      << "output_units=" << output_units << '\n'
      << "windows_computed=" << windows_computed << '\n'
      << "early_calls=" << early_calls << '\n'
      << "late_calls=" << late_calls << '\n'
      << "full_recomputes=" << full_recomputes << '\n'
      << "reinitializations=" << reinitializations << '\n'
      << "max_batch=" << max_batch << '\n'
      << "preprocess_units=" << preprocess_units() << '\n'
      << "retrigger_units=" << retrigger_units() << '\n'
      << "total_units=" << total_units() << '\n';
}

}  // namespace pud
