#pragma once

#include <map>
#include <string>
#include <vector>

#include "pud/core_model.hpp"
#include "pud/work.hpp"

namespace pud {

enum class ProblemKind { Counter, Connectivity, Msf, DecrementalMax };

ProblemKind parse_problem(const std::string& name);
std::string problem_name(ProblemKind kind);

// Recomputes f from the active set after every event. `work()` counts the
// elements it looked at.
class BruteForce {
 public:
  BruteForce(ProblemKind kind, std::int32_t vertices) : kind_(kind), vertices_(vertices) {}

  void apply(const Event& e);
  Answer answer();
  const std::map<Element, Payload>& active() const { return active_; }
  std::uint64_t work() const { return work_; }

 private:
  ProblemKind kind_;
  std::int32_t vertices_;
  std::map<Element, Payload> active_;
  std::uint64_t work_ = 0;
};

std::vector<Answer> brute_force_outputs(ProblemKind kind, std::int32_t vertices,
                                        const std::vector<RealEvent>& stream);

}  // namespace pud
