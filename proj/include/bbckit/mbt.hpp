#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "bbckit/spec.hpp"
#include "bbckit/sut.hpp"

namespace bbckit {

/// Inputs already tried, per specification state.
class MbtMemory {
 public:
  explicit MbtMemory(std::size_t num_spec_states = 0) : tried_(num_spec_states) {}
  bool tried(StateId q, Symbol input) const;
  void mark(StateId q, Symbol input);
  const std::set<Symbol>& at(StateId q) const { return tried_.at(q); }
  std::size_t size() const { return tried_.size(); }

 private:
  std::vector<std::set<Symbol>> tried_;
};

struct TestVerdict {
  bool failed = false;
  /// Executed steps; on fail the last step holds the rejected output.
  Trace trace;
  /// 1-based position of the first rejected symbol of interleave(trace).
  std::optional<std::size_t> position;
};

/// Walks spec and SUT together for at most max_steps inputs, choosing inputs
/// enabled in the spec and preferring ones not yet tried from the current
/// spec state. One testing query. A spec state without enabled inputs ends
/// the test with pass.
TestVerdict derive_and_run_test(const SpecDfa& spec, Sut& sut, MbtMemory& mem,
                                std::size_t max_steps, std::mt19937_64& rng);

/// Test length used by the standalone tester: twice the spec state count.
std::size_t default_mbt_test_length(const SpecDfa& spec);

struct MbtReport {
  bool found = false;
  /// Tests executed up to and including the failing one.
  std::uint64_t tests_run = 0;
  std::optional<std::uint64_t> tests_to_bug;
  std::optional<TestVerdict> failure;
  QueryStats stats;
};

/// Runs up to n_tests tests with shared memory and stops at the first fail.
/// Throws PreconditionError when n_tests is 0. BudgetExceeded ends the suite
/// early without a verdict.
MbtReport run_mbt_suite(const SpecDfa& spec, Sut& sut, std::uint64_t n_tests,
                        std::uint64_t seed,
                        std::optional<std::size_t> test_length = std::nullopt);

}  // namespace bbckit
