#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbckit/conformance.hpp"
#include "bbckit/lsharp.hpp"
#include "bbckit/monitor.hpp"
#include "bbckit/spec.hpp"
#include "bbckit/sut.hpp"

namespace bbckit {

enum class BbcMode { bbc, learn_then_check };
enum class Resolution { bug, no_bug, unresolved };

struct BbcConfig {
  bool monitor_enabled = true;
  /// Also monitor testing queries (learning queries are always monitored
  /// when monitor_enabled is set).
  bool monitor_testing = false;
  Budget budget;
  ConformanceConfig conformance;
  std::uint64_t seed = 0;
  BbcMode mode = BbcMode::bbc;
};

struct PropertyOutcome {
  std::string property;
  Resolution resolution = Resolution::unresolved;
  std::optional<BugReport> bug;
  /// Global step at which a violating trace was first executed on the SUT,
  /// within the query scope a monitor would observe under this config.
  std::optional<std::uint64_t> first_violation_step;
  /// learn-then-check only: total queries after which the bug would have
  /// been confirmed had the current hypothesis been model checked.
  std::optional<std::uint64_t> detectable_at_queries;
};

struct BbcOutcome {
  std::vector<PropertyOutcome> properties;
  std::optional<MealyMachine> final_hypothesis;
  QueryStats stats;
  std::uint64_t hypotheses = 0;
  /// Total queries when a conformance round first passed.
  std::optional<std::uint64_t> queries_to_full_model;
  bool budget_exhausted = false;
};

/// Black-box checking loop: learn, model check each unresolved property,
/// confirm counterexamples on the SUT, test conformance, and monitor queries.
/// Budget exhaustion ends with a model-check sweep of the last hypothesis.
BbcOutcome run_bbc(Sut& sut, const SpecSet& specs, const BbcConfig& cfg);
BbcOutcome run_bbc(Sut& sut, const SpecSet& specs, const BbcConfig& cfg,
                   Learner& learner);

/// Baseline: learn until a conformance round passes, then model check the
/// final hypothesis only.
BbcOutcome run_learn_then_check(Sut& sut, const SpecSet& specs, const BbcConfig& cfg);
BbcOutcome run_learn_then_check(Sut& sut, const SpecSet& specs, const BbcConfig& cfg,
                                Learner& learner);

/// Dispatches on cfg.mode.
BbcOutcome run_engine(Sut& sut, const SpecSet& specs, const BbcConfig& cfg);

std::string to_string(Resolution r);

}  // namespace bbckit
