#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "bbckit/mealy.hpp"
#include "bbckit/sut.hpp"

namespace bbckit {

struct ConformanceConfig {
  /// Mean of the geometric infix length distribution.
  double expected_infix_length = 10.0;
  /// Testing queries per round; unset means "until a counterexample".
  std::optional<std::uint64_t> max_tests;
  std::uint64_t seed = 0;
};

/// Random state-cover + geometric infix + separating suffix test generator
/// for one hypothesis. Separating words are computed lazily and cached.
class ConformanceTester {
 public:
  /// Throws PreconditionError when h is partial or the mean is not positive.
  ConformanceTester(const MealyMachine& h, const ConformanceConfig& cfg,
                    std::mt19937_64& rng);

  Word next_test();

  const std::vector<Word>& state_cover() const { return cover_; }
  /// Length of the infix inside the last generated test.
  std::size_t last_infix_length() const { return last_infix_; }
  /// States the last separating suffix was chosen for.
  std::pair<StateId, StateId> last_suffix_states() const { return last_pair_; }

 private:
  const Word& separating(StateId a, StateId b);

  const MealyMachine& h_;
  std::mt19937_64& rng_;
  std::geometric_distribution<std::size_t> infix_len_;
  std::vector<Word> cover_;
  std::vector<StateId> cover_states_;
  std::map<std::pair<StateId, StateId>, Word> separating_;
  std::size_t last_infix_ = 0;
  std::pair<StateId, StateId> last_pair_{0, 0};
};

Word next_conformance_test(const MealyMachine& h, const ConformanceConfig& cfg,
                           std::mt19937_64& rng);

struct ConformanceOutcome {
  /// Disagreeing SUT trace, if one was found.
  std::optional<Trace> counterexample;
  std::uint64_t tests_run = 0;
  /// True when the round was skipped because h equals the SUT machine.
  bool skipped_equivalent = false;
};

/// Sends tests as testing queries until one disagrees with h or max_tests
/// is reached. With max_tests unset and h equivalent to the SUT machine the
/// round is skipped. Propagates BudgetExceeded and QueryAborted.
ConformanceOutcome run_conformance_round(const MealyMachine& h, Sut& sut,
                                         const ConformanceConfig& cfg,
                                         std::mt19937_64& rng);

}  // namespace bbckit
