#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bbckit/dot.hpp"
#include "bbckit/mealy.hpp"
#include "bbckit/spec.hpp"

namespace bbckit {

enum class RunMode { bbc, bbc_nomon, learn_then_check, mbt };

std::string to_string(RunMode m);
/// Throws ConfigError on an unknown name.
RunMode parse_run_mode(std::string_view name);

struct ExperimentSut {
  std::string id;
  std::filesystem::path path;
};

struct ExperimentSpec {
  std::string sut_id;
  std::string id;
  std::filesystem::path path;
  SpecFormat format = SpecFormat::plain;
};

struct ExperimentConfig {
  std::vector<ExperimentSut> suts;
  std::vector<ExperimentSpec> specs;
  std::vector<RunMode> modes{RunMode::bbc, RunMode::learn_then_check};
  std::uint64_t seeds = 1;
  std::uint64_t seed_base = 0;
  std::optional<std::uint64_t> step_budget;
  /// Testing queries per conformance round. Defaults to 10^6 when a step
  /// budget is set and to unbounded otherwise.
  std::optional<std::uint64_t> max_tests;
  double expected_infix_length = 10.0;
  bool monitor_testing = false;
  /// MBT suite size as a multiple of the BBC run's total queries.
  std::uint64_t mbt_factor = 10;
  std::optional<std::size_t> mbt_test_length;
  std::filesystem::path out_dir = "results";
};

/// Parses the line-oriented key=value format. Relative paths are resolved
/// against `base_dir`. Throws ConfigError with the line number.
ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& file);

struct ExperimentRow {
  std::string sut;
  std::string property;
  RunMode mode = RunMode::bbc;
  std::uint64_t seed = 0;
  /// Whether the SUT itself violates the property (ground truth).
  bool sut_violates = false;
  std::string resolved;  // bug, no-bug, unresolved, error
  std::uint64_t learning_queries = 0;
  std::uint64_t testing_queries = 0;
  std::uint64_t learning_steps = 0;
  std::uint64_t testing_steps = 0;
  std::uint64_t hypotheses = 0;
  std::uint64_t final_hyp_states = 0;
  std::optional<std::uint64_t> bug_step;
  std::optional<std::uint64_t> first_violation_step;
  std::optional<std::uint64_t> queries_to_full_model;
  std::optional<std::uint64_t> detectable_at;
  std::optional<std::uint64_t> mbt_tests;
  std::string error;
  std::uint64_t wall_time_ns = 0;

  std::uint64_t total_queries() const { return learning_queries + testing_queries; }
  std::uint64_t total_steps() const { return learning_steps + testing_steps; }
};

/// Runs every (sut, property, mode, seed) cell over `workers` threads and
/// returns the rows sorted by config order. Failures are recorded in-row.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg,
                                          unsigned workers = 1);

/// Runs all configured modes for one property and seed, in config order.
/// MBT suites are sized from a BBC run on the same seed.
std::vector<ExperimentRow> run_experiment_cell(const ExperimentConfig& cfg,
                                               const std::string& sut_id,
                                               const MealyMachine& sut,
                                               const SpecDfa& spec,
                                               std::uint64_t seed);

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows,
                    bool include_wall_time = true);
/// Inverse of write_rows_csv (with wall time). Throws ConfigError.
std::vector<ExperimentRow> read_rows_csv(std::istream& in);

struct SummaryEntry {
  std::string section, sut, property, mode, metric;
  double value = 0;
};

/// Aggregates computed from rows alone.
std::vector<SummaryEntry> summarize(const std::vector<ExperimentRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryEntry>& entries);

/// Worker count from BBCKIT_WORKERS, else hardware concurrency (at least 1).
unsigned default_workers();

}  // namespace bbckit
