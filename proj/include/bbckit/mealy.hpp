#pragma once

#include <optional>
#include <vector>

#include "bbckit/alphabet.hpp"
#include "bbckit/dfa.hpp"
#include "bbckit/trace.hpp"

namespace bbckit {

/// Partial Mealy machine whose transitions emit output words. δ(q,i) is
/// defined exactly when λ(q,i) is.
class MealyMachine {
 public:
  explicit MealyMachine(IoAlphabet io = {});

  const IoAlphabet& io() const { return io_; }
  const Alphabet& inputs() const { return io_.inputs(); }
  const Alphabet& outputs() const { return io_.outputs(); }
  std::size_t num_states() const { return num_states_; }
  StateId initial() const { return initial_; }

  bool defined(StateId q, Symbol i) const {
    return next_[slot(q, i)] != kNoState;
  }
  /// Undefined entries yield kNoState / an empty word; check `defined`.
  StateId next(StateId q, Symbol i) const { return next_[slot(q, i)]; }
  const Word& output(StateId q, Symbol i) const { return out_[slot(q, i)]; }
  bool is_complete() const;

  friend bool operator==(const MealyMachine&, const MealyMachine&) = default;

 private:
  friend class MealyBuilder;
  std::size_t slot(StateId q, Symbol i) const {
    return static_cast<std::size_t>(q) * io_.inputs().size() + i.id;
  }

  IoAlphabet io_;
  std::size_t num_states_ = 0;
  StateId initial_ = 0;
  std::vector<StateId> next_;
  std::vector<Word> out_;
};

class MealyBuilder {
 public:
  explicit MealyBuilder(IoAlphabet io);

  StateId add_state();
  void set_initial(StateId q);
  /// Throws NondeterminismError on a conflicting redefinition.
  void add_transition(StateId from, Symbol input, Word output, StateId to);
  std::size_t num_states() const { return m_.num_states_; }

  MealyMachine build() &&;

 private:
  MealyMachine m_;
};

/// Runs `inputs` from the initial state. Throws PartialityError naming the
/// state and input at the first undefined step.
Trace mealy_run(const MealyMachine& m, WordView inputs);

/// Outputs predicted for `inputs` starting at `q`; absent if undefined.
std::optional<Trace> mealy_run_from(const MealyMachine& m, StateId q,
                                    WordView inputs);

/// All-final DFA over I ∪ O. Original states keep their indices; auxiliary
/// states (pending output suffix, target) are shared and appended after them.
Dfa mealy_to_dfa(const MealyMachine& m);

/// Inverse of mealy_to_dfa on its image. Mealy states are the reachable DFA
/// states with only input transitions, in increasing DFA index order.
MealyMachine dfa_to_mealy(const Dfa& a, const Alphabet& inputs,
                          const Alphabet& outputs);

/// Reachable sub-machine, states kept in increasing index order.
MealyMachine reachable_part(const MealyMachine& m);

/// States renumbered in BFS order from the initial state (inputs in alphabet
/// order); unreachable states dropped.
MealyMachine canonical_form(const MealyMachine& m);

/// Minimal equivalent complete machine in canonical form (Moore-style
/// partition refinement). Throws PreconditionError on a partial machine.
MealyMachine minimize(const MealyMachine& m);

bool minimize_and_isomorphic(const MealyMachine& m1, const MealyMachine& m2);

/// Shortest input word on which (m1, q1) and (m2, q2) emit different
/// outputs; absent when the two states are equivalent. Requires complete
/// machines over the same alphabets.
std::optional<Word> distinguishing_word(const MealyMachine& m1, StateId q1,
                                        const MealyMachine& m2, StateId q2);

}  // namespace bbckit
