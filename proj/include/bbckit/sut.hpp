#pragma once

#include <cstdint>
#include <optional>

#include "bbckit/error.hpp"
#include "bbckit/mealy.hpp"
#include "bbckit/trace.hpp"

namespace bbckit {

enum class QueryKind { learning, testing };

/// Query and step counters. A step is one input symbol sent to the SUT.
struct QueryStats {
  std::uint64_t learning_queries = 0;
  std::uint64_t testing_queries = 0;
  std::uint64_t learning_steps = 0;
  std::uint64_t testing_steps = 0;
  /// Global step index (total steps after the detecting step) of the first
  /// confirmed bug.
  std::optional<std::uint64_t> bug_detection_step;

  std::uint64_t total_queries() const { return learning_queries + testing_queries; }
  std::uint64_t total_steps() const { return learning_steps + testing_steps; }
  friend bool operator==(const QueryStats&, const QueryStats&) = default;
};

struct Budget {
  std::optional<std::uint64_t> max_steps;
  std::optional<std::uint64_t> max_testing_queries_per_round;
};

/// Receives every executed step. Returning true from on_step aborts the
/// running query right after that step.
class StepObserver {
 public:
  virtual ~StepObserver() = default;
  virtual void on_query_begin(QueryKind) {}
  virtual bool on_step(QueryKind kind, std::uint64_t global_step, Symbol input,
                       const Word& output) = 0;
};

/// Thrown out of Sut::query / Session::step when an observer stops a query.
class QueryAborted : public Error {
 public:
  QueryAborted(QueryKind kind, Trace partial)
      : Error("query aborted by observer"), kind_(kind), partial_(std::move(partial)) {}
  QueryKind kind() const { return kind_; }
  const Trace& partial() const { return partial_; }

 private:
  QueryKind kind_;
  Trace partial_;
};

/// Simulated system under test: a complete Mealy machine replayed from its
/// initial state on every query. Single owner; not thread safe.
class Sut {
 public:
  /// Throws ConfigError when the machine is partial.
  explicit Sut(MealyMachine machine);

  /// Interactive query: the caller picks each input after seeing the
  /// previous output. Counts one query when opened. The budget is checked
  /// before every step.
  class Session {
   public:
    Word step(Symbol input);
    const Trace& trace() const { return trace_; }

   private:
    friend class Sut;
    Session(Sut& sut, QueryKind kind) : sut_(&sut), kind_(kind), state_(sut.machine_.initial()) {}
    Sut* sut_;
    QueryKind kind_;
    StateId state_;
    Trace trace_;
  };

  /// Reset, then replay `inputs`. Throws BudgetExceeded before starting if
  /// the query would cross the step budget.
  Trace query(WordView inputs, QueryKind kind);
  Session open_session(QueryKind kind);

  /// At most one observer. Testing queries are only observed when
  /// `include_testing` is set.
  void attach_observer(StepObserver* observer, bool include_testing = false);
  void detach_observer() { observer_ = nullptr; }

  void set_budget(Budget b) { budget_ = b; }
  const Budget& budget() const { return budget_; }
  /// Lifts the step budget (used for the final model-check sweep).
  void suspend_budget() { budget_.max_steps.reset(); }

  const QueryStats& stats() const { return stats_; }
  /// Records the current total step count as the bug detection step, once.
  void record_bug_detection();
  void record_bug_detection(std::uint64_t step);

  /// Ground truth, for oracle-style shortcuts and experiment analysis only.
  const MealyMachine& machine() const { return machine_; }
  const IoAlphabet& io() const { return machine_.io(); }

 private:
  void begin(QueryKind kind);
  Word step_from(StateId& state, Symbol input, QueryKind kind, Trace& trace);

  MealyMachine machine_;
  Budget budget_;
  QueryStats stats_;
  StepObserver* observer_ = nullptr;
  bool observe_testing_ = false;
};

}  // namespace bbckit
