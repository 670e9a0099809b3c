#include "bbckit/model_checker.hpp"

#include "bbckit/error.hpp"

namespace bbckit {

CheckVerdict check(const MealyMachine& h, const SpecDfa& s) {
  if (!(h.io() == s.io())) {
    throw AlphabetMismatch("hypothesis and specification alphabets differ");
  }
  Dfa model = mealy_to_dfa(h);
  Dfa bad = complement(complete(s.dfa()));
  CheckVerdict v;
  auto word = shortest_accepted(product(model, bad));
  if (!word) return v;

  const IoAlphabet& io = h.io();
  ModelCounterexample ce;
  ce.word = *word;
  for (Symbol a : ce.word) {
    if (io.is_input(a)) ce.inputs.push_back(io.input_of(a));
  }
  ce.predicted = mealy_run(h, ce.inputs);
  v.counterexample = std::move(ce);
  return v;
}

Confirmation confirm_on_sut(const CheckVerdict& v, Sut& sut, const SpecDfa& spec) {
  if (v.satisfied()) {
    throw PreconditionError("confirm_on_sut needs an unsatisfied verdict");
  }
  const ModelCounterexample& ce = *v.counterexample;
  const std::uint64_t before = sut.stats().total_steps();
  Trace observed = sut.query(ce.inputs, QueryKind::learning);
  if (auto bug = check_trace(spec, observed)) {
    bug->discovered_by = DiscoveredBy::model_check_confirmation;
    bug->global_step = before + bug->witness.size();
    sut.record_bug_detection(bug->global_step);
    bug->stats = sut.stats();
    return Confirmed{std::move(*bug)};
  }
  // The predicted trace violates the spec, so a compliant observation must
  // differ from it.
  if (observed == ce.predicted) {
    throw Error("model checker counterexample replays unchanged but passes the spec");
  }
  return Spurious{std::move(observed)};
}

}  // namespace bbckit
