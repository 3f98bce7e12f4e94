#include "pud/backstop.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace pud {

void DebtStepper::pull() {
  if (pending_.empty()) return;
  Update u = std::move(pending_.front());
  pending_.pop_front();
  auto [out, units] = process_(u);
  staged_ = std::move(out);
  debt_ = std::max<std::uint64_t>(units, 1);
  work_ += debt_;
}

bool DebtStepper::step() {
  if (debt_ == 0) pull();
  ++steps_;
  if (debt_ > 0 && --debt_ == 0) output_ = staged_;
  return buffer_complete();
}

void DebtStepper::drain() {
  while (!buffer_complete()) {
    if (debt_ == 0) pull();
    debt_ = 0;
    output_ = staged_;
  }
}

Backstop::Backstop(std::vector<std::unique_ptr<SteppableAlgorithm>> algorithms, std::ostream* warnings)
    : algorithms_(std::move(algorithms)), alive_(algorithms_.size(), true), warnings_(warnings) {
  if (algorithms_.empty()) throw std::invalid_argument("backstop needs at least one algorithm");
}

void Backstop::buffer(const Update& u) {
  for (std::size_t i = 0; i < algorithms_.size(); ++i)
    if (alive_[i]) algorithms_[i]->buffer_event(u);
}

void Backstop::note_gap() {
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (std::size_t i = 0; i < algorithms_.size(); ++i) {
    if (!alive_[i]) continue;
    lo = std::min(lo, algorithms_[i]->steps_taken());
    hi = std::max(hi, algorithms_[i]->steps_taken());
  }
  if (hi >= lo) stats_.max_step_gap = std::max(stats_.max_step_gap, hi - lo);
}

Answer Backstop::settle() {
  for (;;) {
    if (std::none_of(alive_.begin(), alive_.end(), [](bool a) { return a; }))
      throw std::runtime_error("every backstopped algorithm failed");
    const std::size_t i = next_;
    next_ = (next_ + 1) % algorithms_.size();
    if (!alive_[i]) continue;
    bool done = false;
    try {
      done = algorithms_[i]->step();
    } catch (const std::exception& e) {
      alive_[i] = false;
      if (warnings_) *warnings_ << "warning: algorithm " << i << " dropped: " << e.what() << '\n';
      continue;
    }
    ++stats_.meta_steps;
    if (next_ == 0) note_gap();
    if (done) {
      stats_.meta_steps_by_day.push_back(stats_.meta_steps);
      stats_.winner_by_day.push_back(i);
      return algorithms_[i]->current_output();
    }
  }
}

BoostRunner::BoostRunner(InstanceFactory factory, std::vector<PredictionBundle> bundles, BoostConfig config,
                         std::ostream* log)
    : factory_(std::move(factory)), bundles_(std::move(bundles)), config_(config), log_(log) {}

std::size_t BoostRunner::instance_count(int k, Day horizon, std::size_t ground_size) {
  auto lg = [](double x) { return static_cast<std::size_t>(std::ceil(std::log2(std::max(x, 1.0)))); };
  return std::max<std::size_t>({std::size_t{1}, static_cast<std::size_t>(k) * lg(horizon), lg(static_cast<double>(ground_size))});
}

std::vector<Prediction> BoostRunner::predictions_for_epoch() const {
  std::vector<Prediction> out;
  std::map<std::pair<Element, Kind>, std::size_t> seen;
  for (const auto& h : history_) {
    Prediction p;
    p.event = h.event;
    p.day = h.day;
    out.push_back(std::move(p));
    ++seen[{h.event.element, h.event.kind}];
  }
  if (bundles_.empty()) return out;
  const int wanted = static_cast<int>(std::log2(horizon_));
  const auto& bundle = bundles_[static_cast<std::size_t>(std::min<int>(wanted, static_cast<int>(bundles_.size())) - 1)];
  std::map<std::pair<Element, Kind>, std::vector<const Prediction*>> by_key;
  for (const auto& p : bundle.predictions)
    if (!p.padding()) by_key[{p.event.element, p.event.kind}].push_back(&p);
  for (auto& [key, ps] : by_key) {
    std::stable_sort(ps.begin(), ps.end(), [](const Prediction* a, const Prediction* b) { return a->day < b->day; });
    auto it = seen.find(key);
    const std::size_t skip = it == seen.end() ? 0 : it->second;
    for (std::size_t i = skip; i < ps.size(); ++i) out.push_back(*ps[i]);
  }
  return out;
}

void BoostRunner::close_epoch() {
  if (!backstop_) return;
  finished_steps_ += backstop_->stats().meta_steps;
  if (config_.measure_epoch_work) {
    auto& rec = epochs_.back();
    for (std::size_t i = 0; i < backstop_->size(); ++i) {
      auto& a = backstop_->algorithm(i);
      a.drain();
      rec.instance_work.push_back(a.work());
    }
  }
  backstop_.reset();
}

void BoostRunner::start_epoch(Day) {
  close_epoch();
  horizon_ *= 2;
  EpochRecord rec;
  rec.horizon = horizon_;
  rec.uncapped = instance_count(config_.k, horizon_, config_.ground_size);
  rec.instances = config_.instances_cap > 0 ? std::min<std::size_t>(rec.uncapped, config_.instances_cap) : rec.uncapped;
  rec.replayed = history_.size();
  if (log_) *log_ << "#epoch T̂=" << horizon_ << " L=" << rec.instances << " uncapped=" << rec.uncapped << '\n';

  const auto predictions = predictions_for_epoch();
  std::vector<std::unique_ptr<SteppableAlgorithm>> instances;
  for (std::size_t i = 0; i < rec.instances; ++i) {
    std::uint64_t seed = config_.seed * 0x9e3779b97f4a7c15ULL + epochs_.size() * 1000003ULL + i;
    instances.push_back(factory_(horizon_, predictions, seed));
  }
  backstop_ = std::make_unique<Backstop>(std::move(instances), log_);
  for (const auto& h : history_) backstop_->buffer(h);
  epochs_.push_back(std::move(rec));
}

Answer BoostRunner::run_day(const Update& u) {
  if (!backstop_ || u.day >= horizon_) start_epoch(u.day);
  history_.push_back(u);
  return backstop_->run_day(u);
}

void BoostRunner::finish() { close_epoch(); }

std::uint64_t BoostRunner::meta_steps() const {
  return finished_steps_ + (backstop_ ? backstop_->stats().meta_steps : 0);
}

std::size_t BoostRunner::replayed() const {
  std::size_t total = 0;
  for (const auto& e : epochs_) total += e.replayed;
  return total;
}

}  // namespace pud
