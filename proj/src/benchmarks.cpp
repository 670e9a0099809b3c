#include "bbckit/benchmarks.hpp"

#include <deque>
#include <random>

#include "bbckit/error.hpp"

namespace bbckit {

namespace {

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back(prefix + std::to_string(k));
  return names;
}

Symbol sym(const Alphabet& a, const std::string& name) { return *a.find(name); }

struct Table {
  std::vector<std::vector<StateId>> next;
  std::vector<std::vector<std::uint32_t>> out;
};

/// Random complete transition table in which every state is reachable from
/// state 0: state k > 0 first gets an incoming edge from a lower state.
Table random_table(std::size_t states, std::size_t inputs, std::size_t outputs,
                   std::mt19937_64& rng) {
  Table t;
  t.next.assign(states, std::vector<StateId>(inputs, kNoState));
  t.out.assign(states, std::vector<std::uint32_t>(inputs, 0));
  std::uniform_int_distribution<std::size_t> any_state(0, states - 1);
  std::uniform_int_distribution<std::size_t> any_input(0, inputs - 1);
  std::uniform_int_distribution<std::uint32_t> any_output(
      0, static_cast<std::uint32_t>(outputs - 1));
  for (std::size_t k = 1; k < states; ++k) {
    for (;;) {
      std::uniform_int_distribution<std::size_t> lower(0, k - 1);
      std::size_t from = lower(rng);
      std::size_t i = any_input(rng);
      if (t.next[from][i] == kNoState) {
        t.next[from][i] = static_cast<StateId>(k);
        break;
      }
    }
  }
  for (std::size_t q = 0; q < states; ++q) {
    for (std::size_t i = 0; i < inputs; ++i) {
      if (t.next[q][i] == kNoState) t.next[q][i] = static_cast<StateId>(any_state(rng));
      t.out[q][i] = any_output(rng);
    }
  }
  return t;
}

std::vector<std::size_t> bfs_depths(const Table& t) {
  std::vector<std::size_t> depth(t.next.size(), SIZE_MAX);
  std::deque<StateId> queue{0};
  depth[0] = 0;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (StateId n : t.next[q]) {
      if (depth[n] == SIZE_MAX) {
        depth[n] = depth[q] + 1;
        queue.push_back(n);
      }
    }
  }
  return depth;
}

}  // namespace

MealyMachine two_state_machine() {
  IoAlphabet io(Alphabet({"i", "j"}, AlphabetKind::input),
                Alphabet({"o"}, AlphabetKind::output));
  MealyBuilder b(io);
  StateId q = b.add_state();
  StateId q1 = b.add_state();
  b.set_initial(q);
  Symbol i = sym(io.inputs(), "i"), j = sym(io.inputs(), "j");
  Symbol o = sym(io.outputs(), "o");
  b.add_transition(q, i, {o, o}, q1);
  b.add_transition(q, j, {o}, q1);
  b.add_transition(q1, j, {}, q1);
  return std::move(b).build();
}

MealyMachine crash_machine() {
  IoAlphabet io(Alphabet({"x", "y"}, AlphabetKind::input),
                Alphabet({"ok", "crash"}, AlphabetKind::output));
  MealyBuilder b(io);
  StateId q = b.add_state();
  b.set_initial(q);
  b.add_transition(q, sym(io.inputs(), "x"), {sym(io.outputs(), "crash")}, q);
  b.add_transition(q, sym(io.inputs(), "y"), {sym(io.outputs(), "ok")}, q);
  return std::move(b).build();
}

SpecDfa forbid_output_spec(const IoAlphabet& io, const std::string& output,
                           std::string name) {
  auto bad = io.outputs().find(output);
  if (!bad) throw PreconditionError("unknown output " + output);
  DfaBuilder b(io.combined());
  StateId q = b.add_state(true);
  b.set_initial(q);
  for (Symbol a : io.combined().symbols()) {
    if (a != io.mixed_output(*bad)) b.add_transition(q, a, q);
  }
  if (name.empty()) name = "no-" + output;
  return validate_spec(std::move(b).build(), io, std::move(name));
}

MealyMachine combination_lock(const LockOptions& opts) {
  if (opts.secret.empty() || opts.vault_states < 3) {
    throw PreconditionError("lock needs a secret and at least three vault states");
  }
  IoAlphabet io(Alphabet({"a", "b", "c", "d"}, AlphabetKind::input),
                Alphabet({"click", "locked", "open", "tick", "tock", "hum", "leak", "alarm"},
                         AlphabetKind::output));
  auto out = [&](const char* name) { return Word{sym(io.outputs(), name)}; };
  const std::size_t depth = opts.secret.size();

  std::mt19937_64 rng(opts.seed);
  Table vault = random_table(opts.vault_states, 4, 3, rng);
  const Symbol vault_out[] = {sym(io.outputs(), "tick"), sym(io.outputs(), "tock"),
                              sym(io.outputs(), "hum")};
  // Alarm: the first state at depth 2 inside the vault, on its first input.
  auto depths = bfs_depths(vault);
  std::size_t alarm_state = 0;
  while (depths[alarm_state] != 2) ++alarm_state;

  MealyBuilder b(io);
  for (std::size_t k = 0; k < depth + opts.vault_states; ++k) b.add_state();
  b.set_initial(0);
  for (std::size_t k = 0; k < depth; ++k) {
    for (Symbol i : io.inputs().symbols()) {
      const bool right = io.inputs().text(i) == std::string(1, opts.secret[k]);
      if (!right) {
        b.add_transition(static_cast<StateId>(k), i, out("locked"), 0);
      } else if (k + 1 < depth) {
        b.add_transition(static_cast<StateId>(k), i, out("click"),
                         static_cast<StateId>(k + 1));
      } else {
        b.add_transition(static_cast<StateId>(k), i, out("open"),
                         static_cast<StateId>(depth));
      }
    }
  }
  for (std::size_t v = 0; v < opts.vault_states; ++v) {
    for (std::uint32_t i = 0; i < 4; ++i) {
      Word w{vault_out[vault.out[v][i]]};
      if (v == 0 && i == 0) w = out("leak");
      if (v == alarm_state && i == 0) w = out("alarm");
      b.add_transition(static_cast<StateId>(depth + v), Symbol{i}, w,
                       static_cast<StateId>(depth + vault.next[v][i]));
    }
  }
  return std::move(b).build();
}

std::vector<SpecDfa> lock_properties(const IoAlphabet& io) {
  return {forbid_output_spec(io, "open"), forbid_output_spec(io, "leak"),
          forbid_output_spec(io, "alarm")};
}

MealyMachine hidden_bug_machine(const std::string& secret) {
  if (secret.empty()) throw PreconditionError("hidden bug needs a secret");
  IoAlphabet io(Alphabet({"a", "b", "c", "d"}, AlphabetKind::input),
                Alphabet({"ok", "boom"}, AlphabetKind::output));
  const Word ok{sym(io.outputs(), "ok")};
  const Word boom{sym(io.outputs(), "boom")};
  MealyBuilder b(io);
  for (std::size_t k = 0; k < secret.size(); ++k) b.add_state();
  b.set_initial(0);
  for (std::size_t k = 0; k < secret.size(); ++k) {
    for (Symbol i : io.inputs().symbols()) {
      const bool right = io.inputs().text(i) == std::string(1, secret[k]);
      if (!right) {
        b.add_transition(static_cast<StateId>(k), i, ok, 0);
      } else if (k + 1 < secret.size()) {
        b.add_transition(static_cast<StateId>(k), i, ok, static_cast<StateId>(k + 1));
      } else {
        b.add_transition(static_cast<StateId>(k), i, boom, 0);
      }
    }
  }
  return std::move(b).build();
}

MealyMachine random_machine(std::size_t states, std::size_t inputs,
                            std::size_t outputs, std::uint64_t seed) {
  if (states == 0 || inputs == 0 || outputs == 0) {
    throw PreconditionError("random machine needs states, inputs and outputs");
  }
  IoAlphabet io(Alphabet(numbered("i", inputs), AlphabetKind::input),
                Alphabet(numbered("o", outputs), AlphabetKind::output));
  std::mt19937_64 rng(seed);
  Table t = random_table(states, inputs, outputs, rng);
  MealyBuilder b(io);
  for (std::size_t q = 0; q < states; ++q) b.add_state();
  b.set_initial(0);
  for (std::size_t q = 0; q < states; ++q) {
    for (std::uint32_t i = 0; i < inputs; ++i) {
      b.add_transition(static_cast<StateId>(q), Symbol{i}, {Symbol{t.out[q][i]}},
                       t.next[q][i]);
    }
  }
  return std::move(b).build();
}

MealyMachine shallow_bug_machine(std::size_t states, std::size_t inputs,
                                 std::size_t outputs, std::size_t depth,
                                 std::uint64_t seed) {
  auto names = numbered("o", outputs);
  names.push_back("fault");
  IoAlphabet io(Alphabet(numbered("i", inputs), AlphabetKind::input),
                Alphabet(names, AlphabetKind::output));
  std::mt19937_64 rng(seed);
  Table t = random_table(states, inputs, outputs, rng);
  auto depths = bfs_depths(t);
  std::size_t bug_state = 0;
  while (bug_state < states && depths[bug_state] != depth) ++bug_state;
  if (bug_state == states) throw PreconditionError("no state at the requested depth");
  MealyBuilder b(io);
  for (std::size_t q = 0; q < states; ++q) b.add_state();
  b.set_initial(0);
  const Symbol fault{static_cast<std::uint32_t>(outputs)};
  for (std::size_t q = 0; q < states; ++q) {
    for (std::uint32_t i = 0; i < inputs; ++i) {
      Word w{Symbol{t.out[q][i]}};
      if (q == bug_state && i == inputs - 1) w = {fault};
      b.add_transition(static_cast<StateId>(q), Symbol{i}, w, t.next[q][i]);
    }
  }
  return std::move(b).build();
}

}  // namespace bbckit
