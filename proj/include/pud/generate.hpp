#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pud/core_model.hpp"
#include "pud/io.hpp"
#include "pud/oracle.hpp"

namespace pud {

enum class ErrorKind { Exact, UniformOffset, SparseOffset, HeavyTail, Drop, AdversarialUneven, AdversarialEven };

struct ErrorModel {
  ErrorKind kind = ErrorKind::Exact;
  double sigma = 1.0;  // offset scale
  // Fraction of events nobody predicts (drop), or that are displaced by
  // exactly +-sigma (sparse offset).
  double rho = 0.1;
};

ErrorKind parse_error_kind(const std::string& name);
std::string error_kind_name(ErrorKind kind);

struct GeneratedInstance {
  Day T = 1;
  std::int32_t vertices = 0;
  std::vector<RealEvent> stream;
  std::vector<Prediction> predictions;
  std::int64_t l1 = 0;
};

// A random feasible stream of exactly T events over a pool of elements plus
// predictions perturbed by the model. For graph problems `n` is the vertex
// count and the pool holds 2n random weighted edges; otherwise the pool has
// n elements.
GeneratedInstance generate(const ErrorModel& model, ProblemKind problem, std::int32_t n, Day T,
                           std::uint64_t seed);

// Bundle j is delivered on day 2^(j-1) and holds every prediction dated up
// to 2^j, padded so that sizes double exactly.
std::vector<PredictionBundle> make_bundles(const std::vector<Prediction>& predictions, Day T);

// The same instance seen by the partial-prediction models.
std::vector<DeletionStreamRecord> to_deletion_stream(const GeneratedInstance& g);
InsertionInstance to_insertion_instance(const GeneratedInstance& g);

}  // namespace pud
