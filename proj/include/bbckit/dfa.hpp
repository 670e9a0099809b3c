#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "bbckit/alphabet.hpp"

namespace bbckit {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// Partial deterministic finite automaton. States are dense indices; the
/// transition table is stored row-major (state × symbol) with kNoState for
/// undefined entries. Immutable once built.
class Dfa {
 public:
  /// Single nonfinal initial state, no transitions.
  explicit Dfa(Alphabet sigma = {});

  const Alphabet& alphabet() const { return sigma_; }
  std::size_t num_states() const { return final_.size(); }
  StateId initial() const { return initial_; }
  bool is_final(StateId q) const { return final_.at(q) != 0; }
  std::vector<StateId> finals() const;

  std::optional<StateId> successor(StateId q, Symbol a) const;
  bool is_complete() const;

  /// δ(q⁰, w); absent as soon as a step is undefined. Throws
  /// AlphabetMismatch for symbols outside the alphabet.
  std::optional<StateId> run(WordView w) const;
  std::optional<StateId> run_from(StateId q, WordView w) const;
  bool accepts(WordView w) const;

  /// The same automaton over a (possibly larger) alphabet, matching symbols
  /// by name. Symbols without a counterpart get no transitions.
  Dfa over(const Alphabet& target) const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  friend class DfaBuilder;
  std::size_t slot(StateId q, Symbol a) const {
    return static_cast<std::size_t>(q) * sigma_.size() + a.id;
  }

  Alphabet sigma_;
  StateId initial_ = 0;
  std::vector<char> final_;
  std::vector<StateId> delta_;
};

/// Single-owner builder for Dfa.
class DfaBuilder {
 public:
  explicit DfaBuilder(Alphabet sigma);

  StateId add_state(bool final = false);
  void set_final(StateId q, bool final = true);
  void set_initial(StateId q);
  /// Throws NondeterminismError if (from, a) already leads elsewhere.
  void add_transition(StateId from, Symbol a, StateId to);
  std::size_t num_states() const { return dfa_.final_.size(); }
  const Alphabet& alphabet() const { return dfa_.sigma_; }

  /// Throws PreconditionError for a DFA without states.
  Dfa build() &&;

 private:
  Dfa dfa_;
  bool has_initial_ = false;
};

/// Adds one fresh nonfinal sink (always, even when already complete) that
/// absorbs every undefined transition.
Dfa complete(const Dfa& a);

/// Swaps final and nonfinal states. Requires a complete DFA.
Dfa complement(const Dfa& a);

/// Synchronous product over a shared alphabet; only pairs reachable from the
/// initial pair are materialized, numbered in BFS discovery order.
Dfa product(const Dfa& a1, const Dfa& a2);

/// A minimum-length accepted word (BFS, ties broken by alphabet order), or
/// absent iff the language is empty.
std::optional<Word> shortest_accepted(const Dfa& a);

std::vector<bool> reachable_states(const Dfa& a);
/// Induced sub-automaton on the states flagged in `keep` (which must include
/// the initial state), renumbered in increasing index order.
Dfa restrict_to(const Dfa& a, const std::vector<bool>& keep);

}  // namespace bbckit
