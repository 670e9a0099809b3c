#pragma once

// Random automata and bounded-enumeration oracles shared by the unit and
// acceptance tests. The oracles only use successor lookups and plain loops,
// never the library algorithms they are compared against.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bbckit/dfa.hpp"
#include "bbckit/mealy.hpp"
#include "bbckit/spec.hpp"
#include "bbckit/trace.hpp"

namespace bbckit::testing {

inline std::vector<std::string> names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Random partial DFA with 1..max_states states over 1..max_sigma symbols.
inline Dfa random_dfa(std::mt19937_64& rng, std::size_t max_states, std::size_t max_sigma,
                      double defined = 0.7) {
  const std::size_t n = uniform(rng, 1, max_states);
  const std::size_t k = uniform(rng, 1, max_sigma);
  DfaBuilder b(Alphabet(names("a", k)));
  std::bernoulli_distribution coin(0.5), edge(defined);
  for (std::size_t q = 0; q < n; ++q) b.add_state(coin(rng));
  b.set_initial(static_cast<StateId>(uniform(rng, 0, n - 1)));
  for (std::size_t q = 0; q < n; ++q) {
    for (std::uint32_t a = 0; a < k; ++a) {
      if (edge(rng)) {
        b.add_transition(static_cast<StateId>(q), Symbol{a},
                         static_cast<StateId>(uniform(rng, 0, n - 1)));
      }
    }
  }
  return std::move(b).build();
}

/// Random DFA over a given alphabet.
inline Dfa random_dfa_over(std::mt19937_64& rng, const Alphabet& sigma, std::size_t max_states,
                           double defined = 0.7, double final_p = 0.5) {
  const std::size_t n = uniform(rng, 1, max_states);
  DfaBuilder b(sigma);
  std::bernoulli_distribution fin(final_p), edge(defined);
  for (std::size_t q = 0; q < n; ++q) b.add_state(fin(rng));
  b.set_initial(0);
  for (std::size_t q = 0; q < n; ++q) {
    for (Symbol a : sigma.symbols()) {
      if (edge(rng)) {
        b.add_transition(static_cast<StateId>(q), a, static_cast<StateId>(uniform(rng, 0, n - 1)));
      }
    }
  }
  return std::move(b).build();
}

inline IoAlphabet make_io(std::size_t inputs, std::size_t outputs) {
  return IoAlphabet(Alphabet(names("i", inputs), AlphabetKind::input),
                    Alphabet(names("o", outputs), AlphabetKind::output));
}

/// Random Mealy machine with output words of length 0..max_out_len.
inline MealyMachine random_mealy(std::mt19937_64& rng, const IoAlphabet& io,
                                 std::size_t states, bool complete = true,
                                 std::size_t max_out_len = 1) {
  MealyBuilder b(io);
  for (std::size_t q = 0; q < states; ++q) b.add_state();
  b.set_initial(0);
  std::bernoulli_distribution edge(0.75);
  for (std::size_t q = 0; q < states; ++q) {
    for (Symbol i : io.inputs().symbols()) {
      if (!complete && !edge(rng)) continue;
      Word out;
      const std::size_t len = max_out_len == 1 ? 1 : uniform(rng, 0, max_out_len);
      for (std::size_t k = 0; k < len; ++k) {
        out.push_back(Symbol{static_cast<std::uint32_t>(uniform(rng, 0, io.outputs().size() - 1))});
      }
      b.add_transition(static_cast<StateId>(q), i, out,
                       static_cast<StateId>(uniform(rng, 0, states - 1)));
    }
  }
  return std::move(b).build();
}

/// Every word over `sigma` of length ≤ max_len in shortlex order.
inline std::vector<Word> all_words(std::size_t sigma, std::size_t max_len) {
  std::vector<Word> out{{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t k = level_begin; k < level_end; ++k) {
      for (std::uint32_t a = 0; a < sigma; ++a) {
        Word w = out[k];
        w.push_back(Symbol{a});
        out.push_back(std::move(w));
      }
    }
    level_begin = level_end;
  }
  return out;
}

/// Membership by direct successor lookups.
inline bool oracle_accepts(const Dfa& a, const Word& w) {
  StateId q = a.initial();
  for (Symbol s : w) {
    auto n = a.successor(q, s);
    if (!n) return false;
    q = *n;
  }
  return a.is_final(q);
}

/// Outputs of m on `inputs` by direct table walks; absent when undefined.
inline std::optional<Trace> oracle_run(const MealyMachine& m, const Word& inputs) {
  Trace t;
  StateId q = m.initial();
  for (Symbol i : inputs) {
    if (!m.defined(q, i)) return std::nullopt;
    t.steps.push_back({i, m.output(q, i)});
    q = m.next(q, i);
  }
  return t;
}

inline Word oracle_interleave(const Trace& t, const IoAlphabet& io) {
  Word w;
  for (const auto& s : t.steps) {
    w.push_back(Symbol{s.input.id});
    for (Symbol o : s.output) {
      w.push_back(Symbol{static_cast<std::uint32_t>(io.inputs().size() + o.id)});
    }
  }
  return w;
}

/// Random prefix-closed spec: every reachable state final, random partial
/// transitions over I ∪ O. Inputs are enabled with higher probability than
/// outputs so that interesting behaviour survives.
inline SpecDfa random_spec(std::mt19937_64& rng, const IoAlphabet& io, std::size_t max_states,
                           const std::string& name = "random") {
  const std::size_t n = uniform(rng, 1, max_states);
  DfaBuilder b(io.combined());
  for (std::size_t q = 0; q < n; ++q) b.add_state(true);
  b.set_initial(0);
  std::bernoulli_distribution in_edge(0.9), out_edge(0.75);
  for (std::size_t q = 0; q < n; ++q) {
    for (Symbol a : io.combined().symbols()) {
      if (io.is_input(a) ? in_edge(rng) : out_edge(rng)) {
        b.add_transition(static_cast<StateId>(q), a, static_cast<StateId>(uniform(rng, 0, n - 1)));
      }
    }
  }
  return validate_spec(std::move(b).build(), io, name);
}

}  // namespace bbckit::testing
