#include "bbckit/mealy.hpp"

#include <deque>
#include <map>
#include <utility>

#include "bbckit/error.hpp"

namespace bbckit {

MealyMachine::MealyMachine(IoAlphabet io) : io_(std::move(io)) {}

bool MealyMachine::is_complete() const {
  for (StateId t : next_) {
    if (t == kNoState) return false;
  }
  return true;
}

MealyBuilder::MealyBuilder(IoAlphabet io) : m_(std::move(io)) {}

StateId MealyBuilder::add_state() {
  StateId q = static_cast<StateId>(m_.num_states_++);
  m_.next_.resize(m_.num_states_ * m_.inputs().size(), kNoState);
  m_.out_.resize(m_.num_states_ * m_.inputs().size());
  return q;
}

void MealyBuilder::set_initial(StateId q) {
  if (q >= m_.num_states_) throw PreconditionError("initial state out of range");
  m_.initial_ = q;
}

void MealyBuilder::add_transition(StateId from, Symbol input, Word output,
                                  StateId to) {
  if (from >= m_.num_states_ || to >= m_.num_states_) {
    throw PreconditionError("transition endpoint out of range");
  }
  if (!m_.inputs().contains(input)) {
    throw AlphabetMismatch("transition input outside input alphabet");
  }
  for (Symbol o : output) {
    if (!m_.outputs().contains(o)) {
      throw AlphabetMismatch("transition output outside output alphabet");
    }
  }
  std::size_t k = m_.slot(from, input);
  if (m_.next_[k] != kNoState &&
      (m_.next_[k] != to || m_.out_[k] != output)) {
    throw NondeterminismError("state " + std::to_string(from) +
                              " has two transitions on input '" +
                              m_.inputs().text(input) + "'");
  }
  m_.next_[k] = to;
  m_.out_[k] = std::move(output);
}

MealyMachine MealyBuilder::build() && {
  if (m_.num_states_ == 0) throw PreconditionError("Mealy machine needs a state");
  return std::move(m_);
}

std::optional<Trace> mealy_run_from(const MealyMachine& m, StateId q,
                                    WordView inputs) {
  Trace t;
  t.steps.reserve(inputs.size());
  for (Symbol i : inputs) {
    if (!m.inputs().contains(i)) {
      throw AlphabetMismatch("input symbol outside input alphabet");
    }
    if (!m.defined(q, i)) return std::nullopt;
    t.steps.push_back({i, m.output(q, i)});
    q = m.next(q, i);
  }
  return t;
}

Trace mealy_run(const MealyMachine& m, WordView inputs) {
  StateId q = m.initial();
  Trace t;
  t.steps.reserve(inputs.size());
  for (Symbol i : inputs) {
    if (!m.inputs().contains(i)) {
      throw AlphabetMismatch("input symbol outside input alphabet");
    }
    if (!m.defined(q, i)) {
      throw PartialityError("no transition from state " + std::to_string(q) +
                            " on input '" + m.inputs().text(i) + "'");
    }
    t.steps.push_back({i, m.output(q, i)});
    q = m.next(q, i);
  }
  return t;
}

Dfa mealy_to_dfa(const MealyMachine& m) {
  const IoAlphabet& io = m.io();
  DfaBuilder b(io.combined());
  for (StateId q = 0; q < m.num_states(); ++q) b.add_state(true);
  b.set_initial(m.initial());

  std::map<std::pair<StateId, Word>, StateId> aux;
  // State emitting `pending` and then landing in `target`.
  auto chain = [&](auto&& self, WordView pending, StateId target) -> StateId {
    if (pending.empty()) return target;
    Word key(pending.begin(), pending.end());
    auto it = aux.find({target, key});
    if (it != aux.end()) return it->second;
    StateId s = b.add_state(true);
    aux.emplace(std::pair{target, std::move(key)}, s);
    StateId rest = self(self, pending.subspan(1), target);
    b.add_transition(s, io.mixed_output(pending.front()), rest);
    return s;
  };

  for (StateId q = 0; q < m.num_states(); ++q) {
    for (Symbol i : m.inputs().symbols()) {
      if (!m.defined(q, i)) continue;
      StateId to = chain(chain, m.output(q, i), m.next(q, i));
      b.add_transition(q, io.mixed_input(i), to);
    }
  }
  return std::move(b).build();
}

MealyMachine dfa_to_mealy(const Dfa& a, const Alphabet& inputs,
                          const Alphabet& outputs) {
  IoAlphabet io(inputs, outputs);
  if (!(a.alphabet() == io.combined())) {
    throw AlphabetMismatch("DFA alphabet is not I ∪ O");
  }
  const auto reach = reachable_states(a);
  const auto symbols = a.alphabet().symbols();

  // true: input state, false: output state (single output transition).
  std::vector<bool> is_input_state(a.num_states(), false);
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!reach[q]) continue;
    if (!a.is_final(q)) {
      throw NotTranslatedMealy("state " + std::to_string(q) + " is not final",
                               q);
    }
    std::size_t n_in = 0, n_out = 0;
    for (Symbol s : symbols) {
      if (!a.successor(q, s)) continue;
      (io.is_input(s) ? n_in : n_out)++;
    }
    if (n_out == 0) {
      is_input_state[q] = true;
    } else if (n_out != 1 || n_in != 0) {
      throw NotTranslatedMealy(
          "state " + std::to_string(q) +
              " mixes input and output transitions or has several outputs",
          q);
    }
  }
  if (!is_input_state[a.initial()]) {
    throw NotTranslatedMealy("initial state has an output transition",
                             a.initial());
  }

  std::vector<StateId> renumber(a.num_states(), kNoState);
  MealyBuilder b(io);
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (reach[q] && is_input_state[q]) renumber[q] = b.add_state();
  }
  b.set_initial(renumber[a.initial()]);

  for (StateId q = 0; q < a.num_states(); ++q) {
    if (renumber[q] == kNoState) continue;
    for (Symbol s : symbols) {
      if (!io.is_input(s)) continue;
      auto t = a.successor(q, s);
      if (!t) continue;
      Word out;
      StateId cur = *t;
      std::size_t guard = 0;
      while (!is_input_state[cur]) {
        if (++guard > a.num_states()) {
          throw NotTranslatedMealy(
              "infinite output chain through state " + std::to_string(cur),
              cur);
        }
        for (Symbol o : symbols) {
          if (auto nxt = a.successor(cur, o)) {
            out.push_back(io.output_of(o));
            cur = *nxt;
            break;
          }
        }
      }
      b.add_transition(renumber[q], io.input_of(s), std::move(out),
                       renumber[cur]);
    }
  }
  return std::move(b).build();
}

namespace {

std::vector<bool> reachable(const MealyMachine& m) {
  std::vector<bool> seen(m.num_states(), false);
  std::vector<StateId> stack{m.initial()};
  seen[m.initial()] = true;
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    for (Symbol i : m.inputs().symbols()) {
      if (!m.defined(q, i)) continue;
      StateId t = m.next(q, i);
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

MealyMachine renumbered(const MealyMachine& m,
                        const std::vector<StateId>& order) {
  std::vector<StateId> id(m.num_states(), kNoState);
  MealyBuilder b(m.io());
  for (StateId q : order) id[q] = b.add_state();
  b.set_initial(id[m.initial()]);
  for (StateId q : order) {
    for (Symbol i : m.inputs().symbols()) {
      if (m.defined(q, i)) {
        b.add_transition(id[q], i, m.output(q, i), id[m.next(q, i)]);
      }
    }
  }
  return std::move(b).build();
}

}  // namespace

MealyMachine reachable_part(const MealyMachine& m) {
  auto seen = reachable(m);
  std::vector<StateId> order;
  for (StateId q = 0; q < m.num_states(); ++q) {
    if (seen[q]) order.push_back(q);
  }
  return renumbered(m, order);
}

MealyMachine canonical_form(const MealyMachine& m) {
  std::vector<bool> seen(m.num_states(), false);
  std::vector<StateId> order{m.initial()};
  seen[m.initial()] = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (Symbol i : m.inputs().symbols()) {
      if (!m.defined(order[k], i)) continue;
      StateId t = m.next(order[k], i);
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return renumbered(m, order);
}

MealyMachine minimize(const MealyMachine& in) {
  if (!in.is_complete()) {
    throw PreconditionError("minimize requires a complete Mealy machine");
  }
  MealyMachine m = reachable_part(in);
  const auto inputs = m.inputs().symbols();
  const std::size_t n = m.num_states();

  std::vector<std::size_t> block(n);
  {
    std::map<std::vector<Word>, std::size_t> ids;
    for (StateId q = 0; q < n; ++q) {
      std::vector<Word> sig;
      for (Symbol i : inputs) sig.push_back(m.output(q, i));
      block[q] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
  }
  std::size_t count = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next_block(n);
    for (StateId q = 0; q < n; ++q) {
      std::vector<std::size_t> sig{block[q]};
      for (Symbol i : inputs) sig.push_back(block[m.next(q, i)]);
      next_block[q] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    block = std::move(next_block);
    if (ids.size() == count) break;
    count = ids.size();
  }

  std::vector<StateId> representative(count, kNoState);
  for (StateId q = 0; q < n; ++q) {
    if (representative[block[q]] == kNoState) representative[block[q]] = q;
  }
  MealyBuilder b(m.io());
  for (std::size_t k = 0; k < count; ++k) b.add_state();
  b.set_initial(static_cast<StateId>(block[m.initial()]));
  for (std::size_t k = 0; k < count; ++k) {
    StateId q = representative[k];
    for (Symbol i : inputs) {
      b.add_transition(static_cast<StateId>(k), i, m.output(q, i),
                       static_cast<StateId>(block[m.next(q, i)]));
    }
  }
  return canonical_form(std::move(b).build());
}

bool minimize_and_isomorphic(const MealyMachine& m1, const MealyMachine& m2) {
  if (!(m1.io() == m2.io())) return false;
  return minimize(m1) == minimize(m2);
}

std::optional<Word> distinguishing_word(const MealyMachine& m1, StateId q1,
                                        const MealyMachine& m2, StateId q2) {
  if (!(m1.io() == m2.io())) {
    throw AlphabetMismatch("machines over different alphabets");
  }
  const std::size_t n2 = m2.num_states();
  const auto inputs = m1.inputs().symbols();
  std::vector<std::size_t> parent(m1.num_states() * n2, SIZE_MAX);
  std::vector<Symbol> via(parent.size());
  auto key = [n2](StateId a, StateId b) {
    return static_cast<std::size_t>(a) * n2 + b;
  };
  auto path_to = [&](std::size_t k) {
    Word w;
    const std::size_t root = key(q1, q2);
    while (k != root) {
      w.push_back(via[k]);
      k = parent[k];
    }
    return Word(w.rbegin(), w.rend());
  };
  std::deque<std::pair<StateId, StateId>> queue{{q1, q2}};
  parent[key(q1, q2)] = key(q1, q2);
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (Symbol i : inputs) {
      if (!m1.defined(a, i) || !m2.defined(b, i)) {
        throw PreconditionError("distinguishing_word requires complete machines");
      }
      if (m1.output(a, i) != m2.output(b, i)) {
        Word w = path_to(key(a, b));
        w.push_back(i);
        return w;
      }
      std::size_t k = key(m1.next(a, i), m2.next(b, i));
      if (parent[k] == SIZE_MAX) {
        parent[k] = key(a, b);
        via[k] = i;
        queue.emplace_back(m1.next(a, i), m2.next(b, i));
      }
    }
  }
  return std::nullopt;
}

}  // namespace bbckit
