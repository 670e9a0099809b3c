#include "bbckit/mbt.hpp"

#include "bbckit/error.hpp"

namespace bbckit {

bool MbtMemory::tried(StateId q, Symbol input) const {
  return tried_.at(q).count(input) != 0;
}

void MbtMemory::mark(StateId q, Symbol input) { tried_.at(q).insert(input); }

TestVerdict derive_and_run_test(const SpecDfa& spec, Sut& sut, MbtMemory& mem,
                                std::size_t max_steps, std::mt19937_64& rng) {
  if (max_steps == 0) throw PreconditionError("a test needs at least one step");
  const Dfa& a = spec.dfa();
  const IoAlphabet& io = spec.io();
  if (mem.size() != a.num_states()) mem = MbtMemory(a.num_states());

  TestVerdict v;
  auto session = sut.open_session(QueryKind::testing);
  StateId q = a.initial();
  std::size_t position = 0;
  std::vector<Symbol> fresh, enabled;
  for (std::size_t step = 0; step < max_steps; ++step) {
    fresh.clear();
    enabled.clear();
    for (Symbol i : io.inputs().symbols()) {
      if (!a.successor(q, io.mixed_input(i))) continue;
      enabled.push_back(i);
      if (!mem.tried(q, i)) fresh.push_back(i);
    }
    if (enabled.empty()) break;
    const auto& pool = fresh.empty() ? enabled : fresh;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    Symbol input = pool[pick(rng)];
    mem.mark(q, input);

    Word out = session.step(input);
    q = *a.successor(q, io.mixed_input(input));
    ++position;
    for (Symbol o : out) {
      ++position;
      auto next = a.successor(q, io.mixed_output(o));
      if (!next) {
        v.failed = true;
        v.position = position;
        v.trace = session.trace();
        return v;
      }
      q = *next;
    }
  }
  v.trace = session.trace();
  return v;
}

std::size_t default_mbt_test_length(const SpecDfa& spec) {
  return 2 * spec.dfa().num_states();
}

MbtReport run_mbt_suite(const SpecDfa& spec, Sut& sut, std::uint64_t n_tests,
                        std::uint64_t seed, std::optional<std::size_t> test_length) {
  if (n_tests == 0) throw PreconditionError("a test suite needs at least one test");
  std::mt19937_64 rng(seed);
  MbtMemory mem(spec.dfa().num_states());
  const std::size_t length = test_length.value_or(default_mbt_test_length(spec));
  MbtReport report;
  try {
    while (report.tests_run < n_tests) {
      TestVerdict v = derive_and_run_test(spec, sut, mem, length, rng);
      ++report.tests_run;
      if (v.failed) {
        report.found = true;
        report.tests_to_bug = report.tests_run;
        sut.record_bug_detection();
        report.failure = std::move(v);
        break;
      }
    }
  } catch (const BudgetExceeded&) {
  }
  report.stats = sut.stats();
  return report;
}

}  // namespace bbckit
