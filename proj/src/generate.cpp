#include "pud/generate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>

namespace pud {

ErrorKind parse_error_kind(const std::string& name) {
  if (name == "exact") return ErrorKind::Exact;
  if (name == "uniform" || name == "uniform-offset") return ErrorKind::UniformOffset;
  if (name == "sparse-offset") return ErrorKind::SparseOffset;
  if (name == "heavy-tail") return ErrorKind::HeavyTail;
  if (name == "drop") return ErrorKind::Drop;
  if (name == "adversarial-uneven") return ErrorKind::AdversarialUneven;
  if (name == "adversarial-even") return ErrorKind::AdversarialEven;
  throw std::invalid_argument("unknown error model `" + name + "`");
}

std::string error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Exact: return "exact";
    case ErrorKind::UniformOffset: return "uniform-offset";
    case ErrorKind::SparseOffset: return "sparse-offset";
    case ErrorKind::HeavyTail: return "heavy-tail";
    case ErrorKind::Drop: return "drop";
    case ErrorKind::AdversarialUneven: return "adversarial-uneven";
    case ErrorKind::AdversarialEven: return "adversarial-even";
  }
  return "?";
}

namespace {

class Pool {
 public:
  Pool(ProblemKind problem, std::int32_t n, std::mt19937_64& rng) : problem_(problem), n_(n), rng_(rng) {}

  // Next fresh element with a random payload.
  Event fresh() {
    Event e;
    e.element = next_++;
    e.kind = Kind::Insert;
    switch (problem_) {
      case ProblemKind::Counter:
        break;
      case ProblemKind::DecrementalMax:
        e.payload = {std::uniform_int_distribution<std::int64_t>(0, 1000)(rng_)};
        break;
      case ProblemKind::Connectivity:
      case ProblemKind::Msf: {
        std::uniform_int_distribution<std::int64_t> v(0, n_ - 1);
        std::int64_t a = v(rng_), b = v(rng_);
        while (b == a) b = v(rng_);
        e.payload = {a, b, std::uniform_int_distribution<std::int64_t>(1, 100)(rng_)};
        break;
      }
    }
    return e;
  }

 private:
  ProblemKind problem_;
  std::int32_t n_;
  std::mt19937_64& rng_;
  Element next_ = 0;
};

bool is_graph(ProblemKind p) { return p == ProblemKind::Connectivity || p == ProblemKind::Msf; }

std::vector<RealEvent> random_stream(Pool& pool, std::size_t pool_size, Day T, std::mt19937_64& rng) {
  std::vector<Event> members;
  for (std::size_t i = 0; i < pool_size; ++i) members.push_back(pool.fresh());
  std::vector<std::size_t> active, inactive(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) inactive[i] = i;
  std::vector<RealEvent> out;
  std::bernoulli_distribution coin(0.5);
  for (Day t = 1; t <= T; ++t) {
    const bool remove = !active.empty() && (inactive.empty() || coin(rng));
    auto& from = remove ? active : inactive;
    auto& to = remove ? inactive : active;
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng);
    std::size_t idx = from[k];
    from[k] = from.back();
    from.pop_back();
    to.push_back(idx);
    Event e = members[idx];
    e.kind = remove ? Kind::Delete : Kind::Insert;
    out.push_back({t, e});
  }
  return out;
}

// Days not used by the construction get short-lived filler elements.
void fill_gaps(std::vector<std::optional<Event>>& days, Pool& pool) {
  std::optional<Event> open;
  for (std::size_t d = 1; d < days.size(); ++d) {
    if (days[d]) continue;
    if (open) {
      Event e = *open;
      e.kind = Kind::Delete;
      days[d] = e;
      open.reset();
    } else {
      open = pool.fresh();
      days[d] = open;
    }
  }
}

Prediction predict(const RealEvent& r, Day day) {
  Prediction p;
  p.event = r.event;
  p.day = day;
  return p;
}

}  // namespace

GeneratedInstance generate(const ErrorModel& model, ProblemKind problem, std::int32_t n, Day T,
                           std::uint64_t seed) {
  if (T < 1) throw std::invalid_argument("T must be positive");
  if (is_graph(problem) ? n < 2 : n < 1) throw std::invalid_argument("n too small for the problem");
  std::mt19937_64 rng(seed);
  Pool pool(problem, n, rng);
  GeneratedInstance g;
  g.T = T;
  g.vertices = is_graph(problem) ? n : 0;
  auto clamp = [T](std::int64_t d) { return static_cast<Day>(std::clamp<std::int64_t>(d, 1, T)); };

  if (model.kind == ErrorKind::AdversarialUneven || model.kind == ErrorKind::AdversarialEven) {
    std::vector<std::optional<Event>> days(static_cast<std::size_t>(T) + 1);
    std::map<Element, Day> predicted_delete;
    if (model.kind == ErrorKind::AdversarialUneven) {
      const Day s = static_cast<Day>(std::sqrt(static_cast<double>(T)));
      if (T < 4 * s) throw std::invalid_argument("horizon too short for the uneven construction");
      for (Day j = 1; j <= s; ++j) {
        Event e = pool.fresh();
        days[j] = e;
        e.kind = Kind::Delete;
        days[T / 2 + j - s] = e;
        predicted_delete[e.element] = T / 2 + j;
      }
    } else {
      for (Day j = 0; 2 * j + 2 <= T; ++j) {
        Event e = pool.fresh();
        days[2 * j + 1] = e;
        e.kind = Kind::Delete;
        days[2 * j + 2] = e;
        predicted_delete[e.element] = std::min<Day>(2 * j + 5, T);
      }
    }
    fill_gaps(days, pool);
    for (Day t = 1; t <= T; ++t) {
      RealEvent r{t, *days[t]};
      g.stream.push_back(r);
      auto it = predicted_delete.find(r.event.element);
      bool adversarial = r.event.kind == Kind::Delete && it != predicted_delete.end();
      g.predictions.push_back(predict(r, adversarial ? it->second : t));
    }
  } else {
    const std::size_t pool_size = is_graph(problem) ? 2 * static_cast<std::size_t>(n) : static_cast<std::size_t>(n);
    g.stream = random_stream(pool, pool_size, T, rng);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& r : g.stream) {
      std::int64_t offset = 0;
      switch (model.kind) {
        case ErrorKind::UniformOffset:
          offset = std::llround(std::uniform_real_distribution<double>(-model.sigma, model.sigma)(rng));
          break;
        case ErrorKind::SparseOffset:
          if (u(rng) < model.rho) offset = std::llround(u(rng) < 0.5 ? -model.sigma : model.sigma);
          break;
        case ErrorKind::HeavyTail: {
          double mag = model.sigma * (std::pow(1.0 - u(rng), -1.0 / 1.5) - 1.0);
          offset = static_cast<std::int64_t>(std::min(mag, 4.0 * T));
          if (u(rng) < 0.5) offset = -offset;
          break;
        }
        case ErrorKind::Drop:
          if (u(rng) < model.rho) continue;
          break;
        default:
          break;
      }
      g.predictions.push_back(predict(r, clamp(r.day + offset)));
    }
  }
  g.l1 = l1_error(g.predictions, g.stream, T);
  return g;
}

std::vector<PredictionBundle> make_bundles(const std::vector<Prediction>& predictions, Day T) {
  std::vector<Prediction> sorted;
  for (const auto& p : predictions)
    if (!p.padding()) sorted.push_back(p);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Prediction& a, const Prediction& b) { return a.day < b.day; });
  int J = 1;
  while ((std::int64_t{1} << J) < T) ++J;
  std::vector<std::size_t> counts(static_cast<std::size_t>(J) + 1);
  std::size_t per_unit = 1;
  for (int j = 1; j <= J; ++j) {
    const std::int64_t limit = std::int64_t{1} << j;
    counts[j] = static_cast<std::size_t>(
        std::partition_point(sorted.begin(), sorted.end(), [&](const Prediction& p) { return p.day <= limit; }) -
        sorted.begin());
    if (j == J) counts[j] = sorted.size();
    per_unit = std::max(per_unit, (counts[j] + (std::size_t{1} << j) - 1) >> j);
  }
  std::vector<PredictionBundle> out;
  for (int j = 1; j <= J; ++j) {
    PredictionBundle b;
    b.index = j;
    b.delivery_day = static_cast<Day>(std::int64_t{1} << (j - 1));
    b.predictions.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(counts[j]));
    Prediction pad;
    pad.event.element = -1;
    b.predictions.resize(per_unit << j, pad);
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

std::map<std::pair<Element, Kind>, std::vector<Day>> predicted_days(const GeneratedInstance& g) {
  std::map<std::pair<Element, Kind>, std::vector<Day>> out;
  for (const auto& p : g.predictions)
    if (!p.padding()) out[{p.event.element, p.event.kind}].push_back(p.day);
  for (auto& [key, days] : out) std::sort(days.begin(), days.end());
  return out;
}

Day nth(const std::map<std::pair<Element, Kind>, std::vector<Day>>& m, Element e, Kind k, std::size_t i) {
  auto it = m.find({e, k});
  if (it == m.end() || i >= it->second.size()) return kEndOfHorizon;
  return it->second[i];
}

}  // namespace

std::vector<DeletionStreamRecord> to_deletion_stream(const GeneratedInstance& g) {
  auto days = predicted_days(g);
  std::map<Element, std::size_t> inserted;
  std::vector<DeletionStreamRecord> out;
  for (const auto& r : g.stream) {
    DeletionStreamRecord rec{r.day, r.event, kEndOfHorizon};
    if (r.event.kind == Kind::Insert)
      rec.predicted_deletion = nth(days, r.event.element, Kind::Delete, inserted[r.event.element]++);
    else
      rec.event.payload.clear();
    out.push_back(std::move(rec));
  }
  return out;
}

InsertionInstance to_insertion_instance(const GeneratedInstance& g) {
  auto days = predicted_days(g);
  InsertionInstance inst;
  std::map<Element, const Payload*> payloads;
  for (const auto& r : g.stream) payloads.emplace(r.event.element, &r.event.payload);
  for (const auto& [key, ds] : days) {
    if (key.second != Kind::Insert) continue;
    inst.ground.push_back({key.first, ds.front(), *payloads.at(key.first)});
  }
  std::map<Element, std::size_t> deleted;
  for (const auto& r : g.stream) {
    InsertionInstance::Record rec{r.day, r.event, kEndOfHorizon};
    if (r.event.kind == Kind::Delete) {
      rec.predicted_reinsertion = nth(days, r.event.element, Kind::Insert, ++deleted[r.event.element]);
      rec.event.payload.clear();
    }
    inst.stream.push_back(std::move(rec));
  }
  return inst;
}

}  // namespace pud
