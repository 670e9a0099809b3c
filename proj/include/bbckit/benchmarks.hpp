#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbckit/mealy.hpp"
#include "bbckit/spec.hpp"

namespace bbckit {

/// Two-state machine with q -i/o o-> q', q -j/o-> q', q' -j/ε-> q'.
MealyMachine two_state_machine();

/// One state; input x emits crash, input y emits ok.
MealyMachine crash_machine();

/// Spec with one state that allows every input and every output except the
/// named one.
SpecDfa forbid_output_spec(const IoAlphabet& io, const std::string& output,
                           std::string name = {});

struct LockOptions {
  /// Secret over a..d; its length is the lock depth.
  std::string secret = "cadbbdac";
  /// States of the region behind the lock.
  std::size_t vault_states = 100;
  std::uint64_t seed = 7;
};

/// Combination lock with inputs a..d. A correct secret symbol emits click,
/// a wrong one emits locked and resets. The last secret symbol emits open
/// and enters a random vault whose entrance leaks on a, and where one state
/// two steps inside raises alarm. Vault outputs otherwise are tick, tock and
/// hum.
MealyMachine combination_lock(const LockOptions& opts = {});

/// The three single-property variants for the lock: no-open, no-leak,
/// no-alarm.
std::vector<SpecDfa> lock_properties(const IoAlphabet& io);

/// Silent lock of the given secret (inputs a..d, output ok) whose last
/// secret symbol emits boom instead. Requires secret length ≥ 1.
MealyMachine hidden_bug_machine(const std::string& secret = "dbacda");

/// Random complete machine, every state reachable, over inputs i0.. and
/// outputs o0.. (each transition emits one symbol).
MealyMachine random_machine(std::size_t states, std::size_t inputs,
                            std::size_t outputs, std::uint64_t seed);

/// Random machine with an additional fault output emitted by exactly one
/// transition leaving a state at BFS depth `depth`.
MealyMachine shallow_bug_machine(std::size_t states, std::size_t inputs,
                                 std::size_t outputs, std::size_t depth,
                                 std::uint64_t seed);

}  // namespace bbckit
