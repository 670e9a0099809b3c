#include "bbckit/bbc.hpp"

#include <random>

#include "bbckit/error.hpp"
#include "bbckit/model_checker.hpp"

namespace bbckit {

namespace {

/// Forwards every step to the stopping monitors and to a shadow observer
/// that only records the first violating execution per property.
class EngineObserver : public StepObserver {
 public:
  EngineObserver(const SpecSet& specs, const BbcConfig& cfg, bool monitoring)
      : monitors_(true), shadow_(false), monitoring_(monitoring),
        shadow_testing_(cfg.monitor_testing) {
    for (std::size_t p = 0; p < specs.specs.size(); ++p) {
      if (monitoring_) monitors_.add(p, specs.specs[p]);
      shadow_.add(p, specs.specs[p]);
    }
  }

  void on_query_begin(QueryKind kind) override {
    if (monitoring_ && observes(kind)) monitors_.on_query_begin(kind);
    if (kind == QueryKind::learning || shadow_testing_) shadow_.on_query_begin(kind);
  }

  bool on_step(QueryKind kind, std::uint64_t step, Symbol input,
               const Word& output) override {
    if (kind == QueryKind::learning || shadow_testing_) {
      shadow_.on_step(kind, step, input, output);
    }
    return monitoring_ && observes(kind) &&
           monitors_.on_step(kind, step, input, output);
  }

  MonitorObserver& monitors() { return monitors_; }
  MonitorObserver& shadow() { return shadow_; }

 private:
  bool observes(QueryKind kind) const {
    return kind == QueryKind::learning || shadow_testing_;
  }

  MonitorObserver monitors_;
  MonitorObserver shadow_;
  bool monitoring_;
  bool shadow_testing_;
};

class Engine {
 public:
  Engine(Sut& sut, const SpecSet& specs, const BbcConfig& cfg, Learner& learner,
         bool check_intermediate)
      : sut_(sut),
        specs_(specs),
        cfg_(cfg),
        learner_(learner),
        check_intermediate_(check_intermediate),
        observer_(specs, cfg, cfg.monitor_enabled && check_intermediate),
        rng_(cfg.seed) {
    if (!(sut.io() == specs.io)) {
      throw AlphabetMismatch("SUT and specification alphabets differ");
    }
    for (const auto& s : specs.specs) {
      if (!(s.io() == specs.io)) {
        throw AlphabetMismatch("specification " + s.name() + " uses another alphabet");
      }
      PropertyOutcome p;
      p.property = s.name();
      out_.properties.push_back(std::move(p));
    }
  }

  BbcOutcome run() {
    sut_.set_budget(cfg_.budget);
    // Testing queries are always offered; the observer filters by scope.
    sut_.attach_observer(&observer_, true);
    try {
      loop();
    } catch (const BudgetExceeded&) {
      out_.budget_exhausted = true;
      sut_.suspend_budget();
      final_sweep();
    }
    harvest();
    sut_.detach_observer();
    out_.stats = sut_.stats();
    return out_;
  }

 private:
  bool unresolved(std::size_t p) const {
    return out_.properties[p].resolution == Resolution::unresolved;
  }
  bool all_resolved() const {
    for (std::size_t p = 0; p < out_.properties.size(); ++p) {
      if (unresolved(p)) return false;
    }
    return true;
  }

  void resolve_bug(std::size_t p, BugReport report) {
    if (!unresolved(p)) return;
    sut_.record_bug_detection(report.global_step);
    report.stats = sut_.stats();
    out_.properties[p].resolution = Resolution::bug;
    out_.properties[p].bug = std::move(report);
    observer_.monitors().remove(p);
  }

  /// Collects monitor and shadow observations made since the last call.
  void harvest() {
    for (auto& v : observer_.monitors().take_violations()) {
      resolve_bug(v.property_index, std::move(v.report));
    }
    for (auto& v : observer_.shadow().take_violations()) {
      auto& first = out_.properties[v.property_index].first_violation_step;
      if (!first) first = v.report.global_step;
    }
  }

  /// Confirms a counterexample for p. Returns the spurious trace if any.
  std::optional<Trace> confirm(std::size_t p, const CheckVerdict& v) {
    try {
      auto c = confirm_on_sut(v, sut_, specs_.specs[p]);
      harvest();
      if (auto* bug = std::get_if<Confirmed>(&c)) {
        resolve_bug(p, std::move(bug->report));
        return std::nullopt;
      }
      return std::get<Spurious>(std::move(c)).trace;
    } catch (const QueryAborted&) {
      harvest();
      return std::nullopt;
    }
  }

  void track_detectability(const MealyMachine& h) {
    for (std::size_t p = 0; p < out_.properties.size(); ++p) {
      auto& prop = out_.properties[p];
      if (prop.detectable_at_queries) continue;
      CheckVerdict v = check(h, specs_.specs[p]);
      if (v.satisfied()) continue;
      // Uncounted replay on the ground truth: would confirmation succeed?
      Trace t = mealy_run(sut_.machine(), v.counterexample->inputs);
      if (check_trace(specs_.specs[p], t)) {
        prop.detectable_at_queries = sut_.stats().total_queries() + 1;
      }
    }
  }

  /// Model checks h on every unresolved property in declaration order.
  /// Returns true when a spurious counterexample was handed to the learner.
  bool check_round(const MealyMachine& h) {
    for (std::size_t p = 0; p < out_.properties.size(); ++p) {
      if (!unresolved(p)) continue;
      CheckVerdict v = check(h, specs_.specs[p]);
      if (v.satisfied()) continue;
      if (auto spurious = confirm(p, v)) {
        learner_.process_counterexample(*spurious);
        return true;
      }
    }
    return false;
  }

  void loop() {
    while (!all_resolved()) {
      Hypothesis h;
      try {
        h = learner_.refine(sut_);
      } catch (const QueryAborted&) {
        harvest();
        continue;
      }
      harvest();
      ++out_.hypotheses;
      out_.final_hypothesis = h.machine;
      if (!check_intermediate_) track_detectability(h.machine);

      if (check_intermediate_ && check_round(h.machine)) continue;
      if (all_resolved()) break;

      ConformanceOutcome round;
      try {
        round = run_conformance_round(h.machine, sut_, cfg_.conformance, rng_);
      } catch (const QueryAborted&) {
        harvest();
        continue;
      }
      harvest();
      if (round.counterexample) {
        learner_.process_counterexample(*round.counterexample);
        continue;
      }
      if (!out_.queries_to_full_model) {
        out_.queries_to_full_model = sut_.stats().total_queries();
      }
      if (!check_intermediate_ && check_round(h.machine)) {
        out_.queries_to_full_model.reset();
        continue;
      }
      for (auto& prop : out_.properties) {
        if (prop.resolution == Resolution::unresolved) {
          prop.resolution = Resolution::no_bug;
        }
      }
    }
  }

  /// Checks the last hypothesis and the learner's current partial model.
  void final_sweep() {
    harvest();
    std::vector<MealyMachine> models;
    if (out_.final_hypothesis) models.push_back(*out_.final_hypothesis);
    if (auto partial = learner_.partial_hypothesis()) models.push_back(std::move(*partial));
    for (const MealyMachine& h : models) {
      for (std::size_t p = 0; p < out_.properties.size(); ++p) {
        if (!unresolved(p)) continue;
        CheckVerdict v = check(h, specs_.specs[p]);
        if (!v.satisfied()) confirm(p, v);
      }
    }
  }

  Sut& sut_;
  const SpecSet& specs_;
  const BbcConfig& cfg_;
  Learner& learner_;
  bool check_intermediate_;
  EngineObserver observer_;
  std::mt19937_64 rng_;
  BbcOutcome out_;
};

}  // namespace

BbcOutcome run_bbc(Sut& sut, const SpecSet& specs, const BbcConfig& cfg,
                   Learner& learner) {
  return Engine(sut, specs, cfg, learner, true).run();
}

BbcOutcome run_bbc(Sut& sut, const SpecSet& specs, const BbcConfig& cfg) {
  LSharpLearner learner(sut.io());
  return run_bbc(sut, specs, cfg, learner);
}

BbcOutcome run_learn_then_check(Sut& sut, const SpecSet& specs, const BbcConfig& cfg,
                                Learner& learner) {
  return Engine(sut, specs, cfg, learner, false).run();
}

BbcOutcome run_learn_then_check(Sut& sut, const SpecSet& specs, const BbcConfig& cfg) {
  LSharpLearner learner(sut.io());
  return run_learn_then_check(sut, specs, cfg, learner);
}

BbcOutcome run_engine(Sut& sut, const SpecSet& specs, const BbcConfig& cfg) {
  return cfg.mode == BbcMode::bbc ? run_bbc(sut, specs, cfg)
                                  : run_learn_then_check(sut, specs, cfg);
}

std::string to_string(Resolution r) {
  switch (r) {
    case Resolution::bug:
      return "bug";
    case Resolution::no_bug:
      return "no-bug";
    case Resolution::unresolved:
      break;
  }
  return "unresolved";
}

}  // namespace bbckit
