#include "bbckit/sut.hpp"

namespace bbckit {

Sut::Sut(MealyMachine machine) : machine_(std::move(machine)) {
  if (!machine_.is_complete()) {
    throw ConfigError("SUT machine must be complete");
  }
}

void Sut::attach_observer(StepObserver* observer, bool include_testing) {
  observer_ = observer;
  observe_testing_ = include_testing;
}

void Sut::record_bug_detection() { record_bug_detection(stats_.total_steps()); }

void Sut::record_bug_detection(std::uint64_t step) {
  if (!stats_.bug_detection_step) stats_.bug_detection_step = step;
}

void Sut::begin(QueryKind kind) {
  if (kind == QueryKind::learning) {
    ++stats_.learning_queries;
  } else {
    ++stats_.testing_queries;
  }
  if (observer_ && (kind == QueryKind::learning || observe_testing_)) {
    observer_->on_query_begin(kind);
  }
}

Word Sut::step_from(StateId& state, Symbol input, QueryKind kind, Trace& trace) {
  if (!machine_.inputs().contains(input)) {
    throw AlphabetMismatch("input outside the SUT input alphabet");
  }
  Word out = machine_.output(state, input);
  state = machine_.next(state, input);
  (kind == QueryKind::learning ? stats_.learning_steps : stats_.testing_steps)++;
  trace.steps.push_back({input, out});
  if (observer_ && (kind == QueryKind::learning || observe_testing_)) {
    if (observer_->on_step(kind, stats_.total_steps(), input, out)) {
      throw QueryAborted(kind, trace);
    }
  }
  return out;
}

Trace Sut::query(WordView inputs, QueryKind kind) {
  if (budget_.max_steps &&
      stats_.total_steps() + inputs.size() > *budget_.max_steps) {
    throw BudgetExceeded("step budget exhausted");
  }
  begin(kind);
  Trace t;
  t.steps.reserve(inputs.size());
  StateId state = machine_.initial();
  for (Symbol i : inputs) step_from(state, i, kind, t);
  return t;
}

Sut::Session Sut::open_session(QueryKind kind) {
  begin(kind);
  return Session(*this, kind);
}

Word Sut::Session::step(Symbol input) {
  if (sut_->budget_.max_steps &&
      sut_->stats_.total_steps() + 1 > *sut_->budget_.max_steps) {
    throw BudgetExceeded("step budget exhausted");
  }
  return sut_->step_from(state_, input, kind_, trace_);
}

}  // namespace bbckit
