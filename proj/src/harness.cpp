#include "pud/harness.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "pud/decremental.hpp"
#include "pud/incremental.hpp"
#include "pud/msf.hpp"
#include "pud/problems.hpp"

namespace pud {

Mode parse_mode(const std::string& name) {
  if (name == "predicted") return Mode::Predicted;
  if (name == "predicted-deletion") return Mode::PredictedDeletion;
  if (name == "offline") return Mode::Offline;
  if (name == "brute-force") return Mode::BruteForce;
  if (name == "backstopped") return Mode::Backstopped;
  if (name == "boosted") return Mode::Boosted;
  throw std::invalid_argument("unknown mode `" + name + "`");
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Predicted: return "predicted";
    case Mode::PredictedDeletion: return "predicted-deletion";
    case Mode::Offline: return "offline";
    case Mode::BruteForce: return "brute-force";
    case Mode::Backstopped: return "backstopped";
    case Mode::Boosted: return "boosted";
  }
  return "?";
}

namespace {

template <DncProblem P>
class EngineAlgorithm : public DynamicAlgorithm {
 public:
  EngineAlgorithm(P problem, EngineOptions opt, const std::vector<Prediction>& predictions)
      : engine_(std::move(problem), opt, predictions) {}
  Answer run_day(const Update& u) override { return engine_.run_day(u.day, u.event, u.hint); }
  const WorkCounters& counters() const override { return engine_.counters(); }
  std::int32_t depth() const override { return engine_.tree().depth(); }

 private:
  Engine<P> engine_;
};

template <DecrementalContract C>
class DecrementalAlgorithm : public DynamicAlgorithm {
 public:
  DecrementalAlgorithm(C contract, Day T, std::uint64_t seed, const std::vector<GroundMember>& ground)
      : dyn_(std::move(contract), T, seed, ground) {}
  Answer run_day(const Update& u) override { return dyn_.run_day(u.day, u.event, u.hint); }
  const WorkCounters& counters() const override { return dyn_.counters(); }
  std::int32_t depth() const override { return dyn_.engine().tree().depth(); }

 private:
  DecrementalDynamic<C> dyn_;
};

class BruteForceAlgorithm : public DynamicAlgorithm {
 public:
  BruteForceAlgorithm(ProblemKind problem, std::int32_t vertices) : bf_(problem, vertices) {}
  Answer run_day(const Update& u) override {
    bf_.apply(u.event);
    Answer out = bf_.answer();
    counters_.output_units = bf_.work();
    return out;
  }
  const WorkCounters& counters() const override { return counters_; }
  std::int32_t depth() const override { return 0; }

 private:
  BruteForce bf_;
  WorkCounters counters_;
};

// Earliest predicted insertion per element becomes its ground-set entry.
std::vector<GroundMember> ground_from(const std::vector<Prediction>& predictions) {
  std::map<Element, GroundMember> ground;
  for (const auto& p : predictions) {
    if (p.padding() || p.event.kind != Kind::Insert) continue;
    auto [it, fresh] = ground.try_emplace(p.event.element, GroundMember{p.event.element, p.event.payload, p.day});
    if (!fresh) it->second.predicted_insertion = std::min(it->second.predicted_insertion, p.day);
  }
  std::vector<GroundMember> out;
  for (auto& [id, g] : ground) out.push_back(std::move(g));
  return out;
}

}  // namespace

std::unique_ptr<DynamicAlgorithm> make_algorithm(const AlgorithmSpec& spec, const std::vector<Prediction>& predictions) {
  EngineOptions opt;
  opt.T = spec.T;
  opt.seed = spec.seed;
  opt.scheduling = spec.scheduling;
  opt.just_in_time = spec.just_in_time;
  const std::vector<Prediction> none;
  const auto& given = spec.just_in_time ? none : predictions;
  switch (spec.problem) {
    case ProblemKind::Counter:
      return std::make_unique<EngineAlgorithm<IncrementalLift<CounterContract>>>(
          IncrementalLift<CounterContract>{}, opt, given);
    case ProblemKind::Connectivity:
      return std::make_unique<EngineAlgorithm<IncrementalLift<ConnectivityContract>>>(
          IncrementalLift<ConnectivityContract>{ConnectivityContract{spec.vertices}}, opt, given);
    case ProblemKind::Msf:
      if (spec.just_in_time) throw std::invalid_argument("msf has no incremental contract");
      return std::make_unique<EngineAlgorithm<MsfProblem>>(MsfProblem{}, opt, predictions);
    case ProblemKind::DecrementalMax:
      return std::make_unique<DecrementalAlgorithm<DecrementalMaxContract>>(DecrementalMaxContract{}, spec.T,
                                                                            spec.seed, ground_from(predictions));
  }
  throw std::invalid_argument("unknown problem");
}

std::unique_ptr<DynamicAlgorithm> make_brute_force(ProblemKind problem, std::int32_t vertices) {
  return std::make_unique<BruteForceAlgorithm>(problem, vertices);
}

std::unique_ptr<SteppableAlgorithm> make_steppable(std::unique_ptr<DynamicAlgorithm> algorithm) {
  std::shared_ptr<DynamicAlgorithm> a(std::move(algorithm));
  const std::uint64_t upfront = a->counters().total_units();
  return std::make_unique<DebtStepper>(
      [a](const Update& u) {
        const std::uint64_t before = a->counters().total_units();
        Answer out = a->run_day(u);
        return std::pair{std::move(out), a->counters().total_units() - before};
      },
      upfront);
}

std::vector<Update> updates_with_hints(const std::vector<RealEvent>& stream, const std::vector<Prediction>& predictions) {
  std::map<std::pair<Element, Kind>, std::vector<Day>> days;
  for (const auto& p : predictions)
    if (!p.padding()) days[{p.event.element, p.event.kind}].push_back(p.day);
  for (auto& [key, ds] : days) std::sort(ds.begin(), ds.end());
  std::map<std::pair<Element, Kind>, std::size_t> count;
  std::vector<Update> out;
  for (const auto& r : stream) {
    const auto& e = r.event;
    const std::size_t nth = count[{e.element, e.kind}]++;
    // Insertion k pairs with deletion k; deletion k with insertion k + 1.
    const std::size_t want = e.kind == Kind::Insert ? nth : nth + 1;
    auto it = days.find({e.element, flip(e.kind)});
    Day hint = it != days.end() && want < it->second.size() ? it->second[want] : kEndOfHorizon;
    out.push_back({r.day, e, hint});
  }
  return out;
}

std::vector<Prediction> exact_predictions(const std::vector<RealEvent>& stream) {
  std::vector<Prediction> out;
  for (const auto& r : stream) {
    Prediction p;
    p.event = r.event;
    p.day = r.day;
    out.push_back(std::move(p));
  }
  return out;
}

RunResult run_stream(const RunOptions& opt, Day T, const std::vector<RealEvent>& stream,
                     const std::vector<Prediction>& predictions, const std::vector<PredictionBundle>& bundles,
                     std::ostream* log) {
  RunResult res;
  AlgorithmSpec spec{opt.problem, opt.vertices, T, opt.seed, Scheduling::Harmonic, false};
  std::vector<Prediction> used = predictions;
  switch (opt.mode) {
    case Mode::Offline:
      used = exact_predictions(stream);
      spec.scheduling = Scheduling::Exact;
      break;
    case Mode::PredictedDeletion:
      spec.just_in_time = opt.problem != ProblemKind::DecrementalMax;
      break;
    default:
      break;
  }
  const auto updates = updates_with_hints(stream, used);

  if (opt.mode == Mode::Backstopped) {
    std::vector<std::unique_ptr<SteppableAlgorithm>> algs;
    algs.push_back(make_steppable(make_algorithm(spec, used)));
    algs.push_back(make_steppable(make_brute_force(opt.problem, opt.vertices)));
    Backstop backstop(std::move(algs), log);
    for (const auto& u : updates) res.outputs.push_back(backstop.run_day(u));
    res.meta_steps = backstop.stats().meta_steps;
    return res;
  }
  if (opt.mode == Mode::Boosted) {
    BoostConfig cfg;
    cfg.k = opt.k;
    cfg.instances_cap = opt.instances_cap;
    cfg.seed = opt.seed;
    cfg.measure_epoch_work = opt.measure_epoch_work;
    std::map<Element, bool> ground;
    for (const auto& p : predictions)
      if (!p.padding()) ground[p.event.element] = true;
    cfg.ground_size = std::max<std::size_t>(ground.size(), 1);
    auto factory = [&](Day horizon, const std::vector<Prediction>& ps, std::uint64_t seed) {
      AlgorithmSpec s = spec;
      s.T = horizon;
      s.seed = seed;
      return make_steppable(make_algorithm(s, ps));
    };
    BoostRunner boost(factory, bundles.empty() ? make_bundles(predictions, T) : bundles, cfg, log);
    for (const auto& u : updates) res.outputs.push_back(boost.run_day(u));
    boost.finish();
    res.meta_steps = boost.meta_steps();
    res.epochs = boost.epochs();
    return res;
  }

  auto alg = opt.mode == Mode::BruteForce ? make_brute_force(opt.problem, opt.vertices) : make_algorithm(spec, used);
  for (const auto& u : updates) res.outputs.push_back(alg->run_day(u));
  res.counters = alg->counters();
  res.depth = alg->depth();
  return res;
}

}  // namespace pud
