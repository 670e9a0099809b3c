#pragma once

#include <string>
#include <vector>

#include "bbckit/alphabet.hpp"
#include "bbckit/dfa.hpp"

namespace bbckit {

enum class SpecSource { plain, bug_automaton, split_product, conjunction };

/// Prefix-closed specification DFA over I ∪ O. After validation it is
/// trimmed to its reachable final states, so every remaining state is final
/// and every missing transition means "forbidden".
class SpecDfa {
 public:
  const Dfa& dfa() const { return dfa_; }
  const IoAlphabet& io() const { return io_; }
  const std::string& name() const { return name_; }
  SpecSource source() const { return source_; }
  bool accepts(WordView mixed) const { return dfa_.accepts(mixed); }

 private:
  friend SpecDfa validate_spec(const Dfa&, const IoAlphabet&, std::string,
                               SpecSource);
  SpecDfa(Dfa dfa, IoAlphabet io, std::string name, SpecSource source)
      : dfa_(std::move(dfa)),
        io_(std::move(io)),
        name_(std::move(name)),
        source_(source) {}

  Dfa dfa_;
  IoAlphabet io_;
  std::string name_;
  SpecSource source_;
};

/// Named specifications sharing one I ∪ O.
struct SpecSet {
  IoAlphabet io;
  std::vector<SpecDfa> specs;
};

/// Checks that `a` (over exactly io.combined()) has a final initial state and
/// that no reachable nonfinal state has a transition into a final state; the
/// first offending transition is reported through NotPrefixClosed.
SpecDfa validate_spec(const Dfa& a, const IoAlphabet& io, std::string name = {},
                      SpecSource source = SpecSource::plain);

/// complement(complete(b)) for a bug automaton whose reachable final states
/// are trapping. Throws BugAutomatonError otherwise.
SpecDfa bug_automaton_to_spec(const Dfa& b, const IoAlphabet& io,
                              std::string name = {});

/// Splits every "i/o" labelled transition q → q' into q -i-> m -o-> q'. One
/// intermediate state m is created per (q, i); it is final iff q is.
SpecDfa split_io_dfa(const Dfa& pairs, const IoAlphabet& io,
                     std::string name = {});

/// Intersection of all specs in the set.
SpecDfa conjoin(const SpecSet& set, std::string name = "conjunction");

}  // namespace bbckit
