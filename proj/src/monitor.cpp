#include "bbckit/monitor.hpp"

#include <algorithm>

#include "bbckit/error.hpp"

namespace bbckit {

Monitor::Monitor(const SpecDfa& spec)
    : completed_(std::make_shared<const Dfa>(complete(spec.dfa()))),
      io_(spec.io()),
      name_(spec.name()) {
  reset();
}

void Monitor::reset() {
  current_ = completed_->initial();
  position_ = 0;
  violated_at_.reset();
  trace_ = {};
  word_.clear();
}

std::optional<std::size_t> Monitor::observe(Symbol input, const Word& output) {
  if (violated_at_) return violated_at_;
  if (!io_.inputs().contains(input)) {
    throw AlphabetMismatch("monitored input outside I");
  }
  trace_.steps.push_back({input, output});
  auto feed = [&](Symbol mixed) {
    current_ = *completed_->successor(current_, mixed);
    ++position_;
    word_.push_back(mixed);
    if (!completed_->is_final(current_)) violated_at_ = position_;
    return violated_at_.has_value();
  };
  if (feed(io_.mixed_input(input))) return violated_at_;
  for (Symbol o : output) {
    if (!io_.outputs().contains(o)) {
      throw AlphabetMismatch("monitored output outside O");
    }
    if (feed(io_.mixed_output(o))) return violated_at_;
  }
  return std::nullopt;
}

BugReport Monitor::report() const {
  if (!violated_at_) throw PreconditionError("monitor has not seen a violation");
  BugReport r;
  r.property = name_;
  r.witness = trace_;
  r.word = word_;
  return r;
}

std::optional<BugReport> check_trace(const SpecDfa& spec, const Trace& t) {
  Monitor m(spec);
  for (const auto& step : t.steps) {
    if (m.observe(step.input, step.output)) return m.report();
  }
  return std::nullopt;
}

void MonitorObserver::add(std::size_t property_index, const SpecDfa& spec) {
  remove(property_index);
  monitors_.emplace_back(property_index, Monitor(spec));
}

void MonitorObserver::remove(std::size_t property_index) {
  std::erase_if(monitors_,
                [&](const auto& m) { return m.first == property_index; });
}

void MonitorObserver::on_query_begin(QueryKind) {
  for (auto& [idx, m] : monitors_) m.reset();
}

bool MonitorObserver::on_step(QueryKind, std::uint64_t global_step,
                              Symbol input, const Word& output) {
  bool any = false;
  for (auto& [idx, m] : monitors_) {
    if (m.observe(input, output)) {
      BugReport r = m.report();
      r.discovered_by = DiscoveredBy::monitor;
      r.global_step = global_step;
      violations_.push_back({idx, std::move(r)});
      any = true;
    }
  }
  if (any) {
    std::erase_if(monitors_, [](const auto& m) { return m.second.violated(); });
  }
  return any && stop_;
}

std::vector<MonitorObserver::Violation> MonitorObserver::take_violations() {
  return std::exchange(violations_, {});
}

}  // namespace bbckit
