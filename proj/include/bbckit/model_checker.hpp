#pragma once

#include <optional>
#include <variant>

#include "bbckit/mealy.hpp"
#include "bbckit/monitor.hpp"
#include "bbckit/spec.hpp"
#include "bbckit/sut.hpp"

namespace bbckit {

struct ModelCounterexample {
  /// Word over I ∪ O accepted by mealy_to_dfa(h) and rejected by the spec.
  Word word;
  /// Input symbols of `word`, in order.
  Word inputs;
  /// mealy_run(h, inputs).
  Trace predicted;
};

struct CheckVerdict {
  std::optional<ModelCounterexample> counterexample;
  bool satisfied() const { return !counterexample.has_value(); }
};

/// Decides h ⊨ s through emptiness of mealy_to_dfa(h) × complement(complete(s)).
/// The reported counterexample is a shortest one with alphabet-order ties.
/// Throws AlphabetMismatch when h and s disagree on I or O.
CheckVerdict check(const MealyMachine& h, const SpecDfa& s);

struct Confirmed {
  BugReport report;
};
struct Spurious {
  /// Observed SUT trace; it differs from the prediction and is a learner
  /// counterexample.
  Trace trace;
};
using Confirmation = std::variant<Confirmed, Spurious>;

/// Replays the counterexample inputs on the SUT as one learning query.
/// Throws PreconditionError when `v` is satisfied; propagates BudgetExceeded
/// and QueryAborted.
Confirmation confirm_on_sut(const CheckVerdict& v, Sut& sut, const SpecDfa& spec);

}  // namespace bbckit
