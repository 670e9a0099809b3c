#include "bbckit/dfa.hpp"

#include <deque>
#include <map>
#include <utility>

#include "bbckit/error.hpp"

namespace bbckit {

Dfa::Dfa(Alphabet sigma) : sigma_(std::move(sigma)) {}

std::vector<StateId> Dfa::finals() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < num_states(); ++q) {
    if (final_[q]) out.push_back(q);
  }
  return out;
}

std::optional<StateId> Dfa::successor(StateId q, Symbol a) const {
  if (!sigma_.contains(a)) {
    throw AlphabetMismatch("symbol id " + std::to_string(a.id) +
                           " not in DFA alphabet");
  }
  StateId t = delta_[slot(q, a)];
  if (t == kNoState) return std::nullopt;
  return t;
}

bool Dfa::is_complete() const {
  for (StateId t : delta_) {
    if (t == kNoState) return false;
  }
  return true;
}

std::optional<StateId> Dfa::run_from(StateId q, WordView w) const {
  for (Symbol a : w) {
    auto next = successor(q, a);
    if (!next) {
      // Remaining symbols must still be valid.
      for (Symbol b : w) {
        if (!sigma_.contains(b)) {
          throw AlphabetMismatch("symbol outside DFA alphabet");
        }
      }
      return std::nullopt;
    }
    q = *next;
  }
  return q;
}

std::optional<StateId> Dfa::run(WordView w) const {
  return run_from(initial_, w);
}

bool Dfa::accepts(WordView w) const {
  auto q = run(w);
  return q && final_[*q];
}

Dfa Dfa::over(const Alphabet& target) const {
  DfaBuilder b(target);
  for (StateId q = 0; q < num_states(); ++q) b.add_state(final_[q]);
  b.set_initial(initial_);
  for (Symbol a : sigma_.symbols()) {
    Symbol mapped = target.at(sigma_.text(a));
    for (StateId q = 0; q < num_states(); ++q) {
      StateId t = delta_[slot(q, a)];
      if (t != kNoState) b.add_transition(q, mapped, t);
    }
  }
  return std::move(b).build();
}

DfaBuilder::DfaBuilder(Alphabet sigma) : dfa_(std::move(sigma)) {}

StateId DfaBuilder::add_state(bool final) {
  StateId q = static_cast<StateId>(dfa_.final_.size());
  dfa_.final_.push_back(final ? 1 : 0);
  dfa_.delta_.resize(dfa_.delta_.size() + dfa_.sigma_.size(), kNoState);
  return q;
}

void DfaBuilder::set_final(StateId q, bool final) {
  dfa_.final_.at(q) = final ? 1 : 0;
}

void DfaBuilder::set_initial(StateId q) {
  if (q >= num_states()) throw PreconditionError("initial state out of range");
  dfa_.initial_ = q;
  has_initial_ = true;
}

void DfaBuilder::add_transition(StateId from, Symbol a, StateId to) {
  if (from >= num_states() || to >= num_states()) {
    throw PreconditionError("transition endpoint out of range");
  }
  if (!dfa_.sigma_.contains(a)) {
    throw AlphabetMismatch("transition symbol outside alphabet");
  }
  StateId& slot = dfa_.delta_[dfa_.slot(from, a)];
  if (slot != kNoState && slot != to) {
    throw NondeterminismError("state " + std::to_string(from) +
                              " has two successors on '" +
                              dfa_.sigma_.text(a) + "'");
  }
  slot = to;
}

Dfa DfaBuilder::build() && {
  if (num_states() == 0) throw PreconditionError("DFA needs a state");
  if (!has_initial_) dfa_.initial_ = 0;
  return std::move(dfa_);
}

Dfa complete(const Dfa& a) {
  DfaBuilder b(a.alphabet());
  for (StateId q = 0; q < a.num_states(); ++q) b.add_state(a.is_final(q));
  StateId sink = b.add_state(false);
  b.set_initial(a.initial());
  for (StateId q = 0; q <= a.num_states(); ++q) {
    for (Symbol s : a.alphabet().symbols()) {
      std::optional<StateId> t;
      if (q < a.num_states()) t = a.successor(q, s);
      b.add_transition(q, s, t.value_or(sink));
    }
  }
  return std::move(b).build();
}

Dfa complement(const Dfa& a) {
  if (!a.is_complete()) {
    throw PreconditionError("complement requires a complete DFA");
  }
  DfaBuilder b(a.alphabet());
  for (StateId q = 0; q < a.num_states(); ++q) b.add_state(!a.is_final(q));
  b.set_initial(a.initial());
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (Symbol s : a.alphabet().symbols()) {
      b.add_transition(q, s, *a.successor(q, s));
    }
  }
  return std::move(b).build();
}

Dfa product(const Dfa& a1, const Dfa& a2) {
  if (!(a1.alphabet() == a2.alphabet())) {
    throw AlphabetMismatch("product of DFAs over different alphabets");
  }
  DfaBuilder b(a1.alphabet());
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  auto intern = [&](StateId p, StateId q) {
    auto [it, fresh] = ids.emplace(std::pair{p, q}, 0);
    if (fresh) {
      it->second = b.add_state(a1.is_final(p) && a2.is_final(q));
      queue.emplace_back(p, q);
    }
    return it->second;
  };
  b.set_initial(intern(a1.initial(), a2.initial()));
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    StateId from = ids.at({p, q});
    for (Symbol s : a1.alphabet().symbols()) {
      auto t1 = a1.successor(p, s);
      auto t2 = a2.successor(q, s);
      if (t1 && t2) b.add_transition(from, s, intern(*t1, *t2));
    }
  }
  return std::move(b).build();
}

std::optional<Word> shortest_accepted(const Dfa& a) {
  const std::size_t n = a.num_states();
  std::vector<StateId> parent(n, kNoState);
  std::vector<Symbol> via(n);
  std::vector<bool> seen(n, false);
  std::deque<StateId> queue{a.initial()};
  seen[a.initial()] = true;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    if (a.is_final(q)) {
      Word w;
      for (StateId cur = q; cur != a.initial(); cur = parent[cur]) {
        w.push_back(via[cur]);
      }
      return Word(w.rbegin(), w.rend());
    }
    for (Symbol s : a.alphabet().symbols()) {
      auto t = a.successor(q, s);
      if (t && !seen[*t]) {
        seen[*t] = true;
        parent[*t] = q;
        via[*t] = s;
        queue.push_back(*t);
      }
    }
  }
  return std::nullopt;
}

std::vector<bool> reachable_states(const Dfa& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<StateId> stack{a.initial()};
  seen[a.initial()] = true;
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    for (Symbol s : a.alphabet().symbols()) {
      auto t = a.successor(q, s);
      if (t && !seen[*t]) {
        seen[*t] = true;
        stack.push_back(*t);
      }
    }
  }
  return seen;
}

Dfa restrict_to(const Dfa& a, const std::vector<bool>& keep) {
  if (!keep.at(a.initial())) {
    throw PreconditionError("restriction must keep the initial state");
  }
  std::vector<StateId> renumber(a.num_states(), kNoState);
  DfaBuilder b(a.alphabet());
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (keep[q]) renumber[q] = b.add_state(a.is_final(q));
  }
  b.set_initial(renumber[a.initial()]);
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!keep[q]) continue;
    for (Symbol s : a.alphabet().symbols()) {
      auto t = a.successor(q, s);
      if (t && keep[*t]) b.add_transition(renumber[q], s, renumber[*t]);
    }
  }
  return std::move(b).build();
}

}  // namespace bbckit
