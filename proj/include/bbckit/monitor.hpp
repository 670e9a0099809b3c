#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bbckit/spec.hpp"
#include "bbckit/sut.hpp"
#include "bbckit/trace.hpp"

namespace bbckit {

enum class DiscoveredBy { monitor, model_check_confirmation };

struct BugReport {
  std::string property;
  /// Steps up to and including the one that left the specification.
  Trace witness;
  /// Shortest rejected prefix of interleave(witness).
  Word word;
  DiscoveredBy discovered_by = DiscoveredBy::monitor;
  QueryStats stats;
  /// Global SUT step index of the violating step (0 for offline checks).
  std::uint64_t global_step = 0;
};

/// Online acceptor over complete(spec). Once a violation is seen the monitor
/// is frozen until reset().
class Monitor {
 public:
  explicit Monitor(const SpecDfa& spec);

  void reset();
  /// Advances over the input, then each output symbol. Returns the 1-based
  /// position (in the interleaved word) of the first rejected symbol.
  std::optional<std::size_t> observe(Symbol input, const Word& output);

  bool violated() const { return violated_at_.has_value(); }
  std::optional<std::size_t> violated_at() const { return violated_at_; }
  /// Number of interleaved symbols consumed so far.
  std::size_t position() const { return position_; }
  const Trace& trace() const { return trace_; }
  const std::string& property() const { return name_; }
  /// Report for the current violation; requires violated().
  BugReport report() const;

 private:
  std::shared_ptr<const Dfa> completed_;
  IoAlphabet io_;
  std::string name_;
  StateId current_ = 0;
  std::size_t position_ = 0;
  std::optional<std::size_t> violated_at_;
  Trace trace_;
  Word word_;
};

/// Batch form of Monitor::observe over a whole trace.
std::optional<BugReport> check_trace(const SpecDfa& spec, const Trace& t);

/// Runs one Monitor per registered property on every observed query.
/// In stopping mode the first violation aborts the query; in shadow mode it
/// only records it. Properties are dropped after their first violation.
class MonitorObserver : public StepObserver {
 public:
  struct Violation {
    std::size_t property_index;
    BugReport report;
  };

  explicit MonitorObserver(bool stop_on_violation = true)
      : stop_(stop_on_violation) {}

  void add(std::size_t property_index, const SpecDfa& spec);
  void remove(std::size_t property_index);
  bool empty() const { return monitors_.empty(); }

  void on_query_begin(QueryKind kind) override;
  bool on_step(QueryKind kind, std::uint64_t global_step, Symbol input,
               const Word& output) override;

  std::vector<Violation> take_violations();
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  bool stop_;
  std::vector<std::pair<std::size_t, Monitor>> monitors_;
  std::vector<Violation> violations_;
};

}  // namespace bbckit
