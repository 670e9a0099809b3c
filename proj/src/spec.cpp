#include "bbckit/spec.hpp"

#include <map>

#include "bbckit/error.hpp"

namespace bbckit {

SpecDfa validate_spec(const Dfa& a, const IoAlphabet& io, std::string name,
                      SpecSource source) {
  if (!(a.alphabet() == io.combined())) {
    throw AlphabetMismatch("specification alphabet differs from I ∪ O");
  }
  if (!a.is_final(a.initial())) {
    throw NotPrefixClosed("initial state is not final, so ε is rejected",
                          a.initial(), 0, a.initial());
  }
  const auto reach = reachable_states(a);
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!reach[q] || a.is_final(q)) continue;
    for (Symbol s : a.alphabet().symbols()) {
      auto t = a.successor(q, s);
      if (t && a.is_final(*t)) {
        throw NotPrefixClosed("nonfinal state " + std::to_string(q) +
                                  " enters final state " + std::to_string(*t) +
                                  " on '" + a.alphabet().text(s) + "'",
                              q, s.id, *t);
      }
    }
  }
  // Reachable nonfinal states cannot lead back to a final state, so the
  // useful part is exactly the reachable final states.
  std::vector<bool> keep(a.num_states(), false);
  for (StateId q = 0; q < a.num_states(); ++q) {
    keep[q] = reach[q] && a.is_final(q);
  }
  return SpecDfa(restrict_to(a, keep), io, std::move(name), source);
}

SpecDfa bug_automaton_to_spec(const Dfa& b, const IoAlphabet& io,
                              std::string name) {
  if (!(b.alphabet() == io.combined())) {
    throw AlphabetMismatch("bug automaton alphabet differs from I ∪ O");
  }
  const Dfa full = complete(b);
  const auto reach = reachable_states(full);
  for (StateId q = 0; q < full.num_states(); ++q) {
    if (!reach[q] || !full.is_final(q)) continue;
    for (Symbol s : full.alphabet().symbols()) {
      StateId t = *full.successor(q, s);
      if (!full.is_final(t)) {
        throw BugAutomatonError(
            "bug state " + std::to_string(q) + " is not trapping: '" +
            full.alphabet().text(s) +
            "' leaves the bug states, so the complement is not prefix closed");
      }
    }
  }
  return validate_spec(complement(full), io, std::move(name),
                       SpecSource::bug_automaton);
}

SpecDfa split_io_dfa(const Dfa& pairs, const IoAlphabet& io,
                     std::string name) {
  struct Pair {
    Symbol input, output;
  };
  std::vector<Pair> decoded;
  for (const auto& label : pairs.alphabet().names()) {
    auto slash = label.find('/');
    if (slash == std::string::npos) {
      throw AlphabetMismatch("label '" + label + "' is not an input/output pair");
    }
    auto in = io.inputs().find(label.substr(0, slash));
    auto out = io.outputs().find(label.substr(slash + 1));
    if (!in || !out) {
      throw AlphabetMismatch("label '" + label +
                             "' is not a single (input, output) pair over I × O");
    }
    decoded.push_back({*in, *out});
  }

  DfaBuilder b(io.combined());
  for (StateId q = 0; q < pairs.num_states(); ++q) b.add_state(pairs.is_final(q));
  b.set_initial(pairs.initial());
  std::map<std::pair<StateId, std::uint32_t>, StateId> middle;
  for (StateId q = 0; q < pairs.num_states(); ++q) {
    for (Symbol s : pairs.alphabet().symbols()) {
      auto t = pairs.successor(q, s);
      if (!t) continue;
      const Pair& p = decoded[s.id];
      auto [it, fresh] = middle.emplace(std::pair{q, p.input.id}, 0);
      if (fresh) {
        it->second = b.add_state(pairs.is_final(q));
        b.add_transition(q, io.mixed_input(p.input), it->second);
      }
      b.add_transition(it->second, io.mixed_output(p.output), *t);
    }
  }
  return validate_spec(std::move(b).build(), io, std::move(name),
                       SpecSource::split_product);
}

SpecDfa conjoin(const SpecSet& set, std::string name) {
  if (set.specs.empty()) throw PreconditionError("conjoin of an empty spec set");
  Dfa acc = complete(set.specs.front().dfa());
  for (std::size_t k = 0; k < set.specs.size(); ++k) {
    if (!(set.specs[k].io() == set.io)) {
      throw AlphabetMismatch("spec '" + set.specs[k].name() +
                             "' uses a different I ∪ O");
    }
    if (k > 0) acc = product(acc, complete(set.specs[k].dfa()));
  }
  return validate_spec(acc, set.io, std::move(name), SpecSource::conjunction);
}

}  // namespace bbckit
