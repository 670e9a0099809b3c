#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bbckit/benchmarks.hpp"
#include "bbckit/conformance.hpp"
#include "bbckit/error.hpp"
#include "bbckit/mbt.hpp"
#include "bbckit/model_checker.hpp"
#include "support/generators.hpp"

using namespace bbckit;
using namespace bbckit::testing;

namespace {

SpecDfa self_spec(const MealyMachine& m) {
  return validate_spec(mealy_to_dfa(m), m.io(), "self");
}

/// Copy of m with the output of (q, i) replaced.
MealyMachine edit_output(const MealyMachine& m, StateId q0, Symbol i0, Word out) {
  MealyBuilder b(m.io());
  for (StateId q = 0; q < m.num_states(); ++q) b.add_state();
  b.set_initial(m.initial());
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (Symbol i : m.inputs().symbols()) {
      if (!m.defined(q, i)) continue;
      b.add_transition(q, i, q == q0 && i == i0 ? out : m.output(q, i), m.next(q, i));
    }
  }
  return std::move(b).build();
}

}  // namespace

TEST(Check, SelfSatisfaction) {
  MealyMachine m = two_state_machine();
  EXPECT_TRUE(check(m, self_spec(m)).satisfied());
}

TEST(Check, CrashCounterexample) {
  MealyMachine m = crash_machine();
  CheckVerdict v = check(m, forbid_output_spec(m.io(), "crash"));
  ASSERT_FALSE(v.satisfied());
  EXPECT_EQ(to_string(v.counterexample->word, m.io().combined()), "x crash");
  EXPECT_EQ(to_string(v.counterexample->inputs, m.inputs()), "x");
  EXPECT_EQ(v.counterexample->predicted, mealy_run(m, v.counterexample->inputs));
}

TEST(Check, AlphabetMismatch) {
  EXPECT_THROW(check(two_state_machine(), forbid_output_spec(crash_machine().io(), "crash")),
               AlphabetMismatch);
}

// Bounded oracle: satisfied iff every run on I^{≤5} interleaves into L(s).
// Machines have at most 3 states so every state is reached within 2 inputs
// and any violation shows up within 5.
TEST(CheckProperty, AgreesWithBoundedEnumeration) {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 150; ++round) {
    IoAlphabet io = make_io(uniform(rng, 1, 2), uniform(rng, 1, 2));
    MealyMachine h = random_mealy(rng, io, uniform(rng, 1, 3), true, 2);
    SpecDfa s = random_spec(rng, io, 2);
    bool oracle = true;
    std::optional<std::size_t> shortest;
    for (const Word& w : all_words(io.inputs().size(), 5)) {
      Word mixed = oracle_interleave(*oracle_run(h, w), io);
      for (std::size_t k = 0; k <= mixed.size(); ++k) {
        if (!oracle_accepts(s.dfa(), Word(mixed.begin(), mixed.begin() + static_cast<std::ptrdiff_t>(k)))) {
          oracle = false;
          if (!shortest || k < *shortest) shortest = k;
          break;
        }
      }
    }
    CheckVerdict v = check(h, s);
    ASSERT_EQ(v.satisfied(), oracle);
    if (!oracle) {
      const auto& ce = *v.counterexample;
      EXPECT_EQ(ce.word.size(), *shortest);
      EXPECT_FALSE(s.accepts(ce.word));
      EXPECT_TRUE(mealy_to_dfa(h).accepts(ce.word));
      EXPECT_EQ(ce.predicted, mealy_run(h, ce.inputs));
    }
  }
}

TEST(Confirm, SelfCheckYieldsBug) {
  MealyMachine m = crash_machine();
  SpecDfa spec = forbid_output_spec(m.io(), "crash");
  Sut sut(m);
  Confirmation c = confirm_on_sut(check(m, spec), sut, spec);
  ASSERT_TRUE(std::holds_alternative<Confirmed>(c));
  const BugReport& r = std::get<Confirmed>(c).report;
  EXPECT_EQ(r.discovered_by, DiscoveredBy::model_check_confirmation);
  EXPECT_EQ(r.global_step, 1u);
  EXPECT_EQ(sut.stats().learning_queries, 1u);
  EXPECT_THROW(confirm_on_sut(check(m, self_spec(m)), sut, spec), PreconditionError);
}

TEST(Confirm, OutputEditGivesSpurious) {
  MealyMachine h = crash_machine();
  SpecDfa spec = forbid_output_spec(h.io(), "crash");
  MealyMachine real = edit_output(h, 0, h.inputs().at("x"), {h.outputs().at("ok")});
  Sut sut(real);
  CheckVerdict v = check(h, spec);
  Confirmation c = confirm_on_sut(v, sut, spec);
  ASSERT_TRUE(std::holds_alternative<Spurious>(c));
  const Trace& t = std::get<Spurious>(c).trace;
  EXPECT_NE(t, v.counterexample->predicted);
  EXPECT_EQ(t, mealy_run(real, t.inputs()));
}

TEST(ConfirmProperty, Trichotomy) {
  std::mt19937_64 rng(47);
  int bugs = 0, spurious = 0;
  for (int round = 0; round < 200; ++round) {
    IoAlphabet io = make_io(2, 2);
    MealyMachine h = random_mealy(rng, io, uniform(rng, 1, 3), true, 2);
    MealyMachine real = random_mealy(rng, io, uniform(rng, 1, 3), true, 2);
    SpecDfa s = random_spec(rng, io, 2);
    CheckVerdict v = check(h, s);
    if (v.satisfied()) continue;
    Sut sut(real);
    Confirmation c = confirm_on_sut(v, sut, s);
    Trace observed = mealy_run(real, v.counterexample->inputs);
    const bool in_spec = s.accepts(oracle_interleave(observed, io)) &&
                         !check_trace(s, observed).has_value();
    if (std::holds_alternative<Confirmed>(c)) {
      ++bugs;
      EXPECT_FALSE(in_spec);
    } else {
      ++spurious;
      EXPECT_TRUE(in_spec);
      EXPECT_NE(observed, v.counterexample->predicted);
    }
  }
  EXPECT_GT(bugs, 0);
  EXPECT_GT(spurious, 0);
}

TEST(Conformance, OneStateHypothesisGivesPureInfixes) {
  MealyMachine h = crash_machine();
  ConformanceConfig cfg;
  std::mt19937_64 rng(1);
  ConformanceTester t(h, cfg, rng);
  for (int k = 0; k < 100; ++k) {
    Word w = t.next_test();
    EXPECT_EQ(w.size(), t.last_infix_length());
  }
}

TEST(Conformance, InfixLengthMean) {
  MealyMachine h = crash_machine();
  ConformanceConfig cfg;
  std::mt19937_64 rng(2024);
  ConformanceTester t(h, cfg, rng);
  double sum = 0;
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) {
    t.next_test();
    sum += static_cast<double>(t.last_infix_length());
  }
  EXPECT_NEAR(sum / draws, 10.0, 0.5);
}

TEST(Conformance, SuffixSeparatesChosenStates) {
  std::mt19937_64 gen(53);
  IoAlphabet io = make_io(3, 2);
  MealyMachine h = minimize(random_mealy(gen, io, 8));
  ASSERT_GT(h.num_states(), 1u);
  ConformanceConfig cfg;
  std::mt19937_64 rng(5);
  ConformanceTester t(h, cfg, rng);
  EXPECT_EQ(t.state_cover().size(), h.num_states());
  for (int k = 0; k < 200; ++k) {
    Word w = t.next_test();
    auto [a, b] = t.last_suffix_states();
    ASSERT_NE(a, b);
    auto sep = distinguishing_word(h, a, h, b);
    ASSERT_TRUE(sep.has_value());
    ASSERT_GE(w.size(), sep->size());
    Word suffix(w.end() - static_cast<std::ptrdiff_t>(sep->size()), w.end());
    EXPECT_NE(mealy_run_from(h, a, suffix), mealy_run_from(h, b, suffix));
  }
  EXPECT_THROW(ConformanceTester(two_state_machine(), cfg, rng), PreconditionError);
  cfg.expected_infix_length = 0;
  EXPECT_THROW(ConformanceTester(h, cfg, rng), PreconditionError);
}

TEST(Conformance, EquivalentHypothesisSkipsRound) {
  MealyMachine m = crash_machine();
  Sut sut(m);
  std::mt19937_64 rng(3);
  ConformanceOutcome out = run_conformance_round(m, sut, {}, rng);
  EXPECT_TRUE(out.skipped_equivalent);
  EXPECT_EQ(sut.stats().testing_queries, 0u);
}

// Near miss: the SUT differs from h on one transition leaving a state that
// is reached by a state-cover word plus one input.
TEST(Conformance, FindsNearMissCounterexamples) {
  std::mt19937_64 gen(59);
  IoAlphabet io = make_io(3, 3);
  MealyMachine h = minimize(random_mealy(gen, io, 6));
  const StateId q = h.next(h.initial(), Symbol{1});
  Word changed{Symbol{static_cast<std::uint32_t>((h.output(q, Symbol{2})[0].id + 1) % 3)}};
  MealyMachine real = edit_output(h, q, Symbol{2}, changed);
  ConformanceConfig cfg;
  cfg.max_tests = 10000;
  int found = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Sut sut(real);
    std::mt19937_64 rng(seed);
    ConformanceOutcome out = run_conformance_round(h, sut, cfg, rng);
    if (!out.counterexample) continue;
    ++found;
    // Genuine: SUT reproduces it and h disagrees.
    EXPECT_EQ(mealy_run(real, out.counterexample->inputs()), *out.counterexample);
    EXPECT_NE(mealy_run(h, out.counterexample->inputs()), *out.counterexample);
  }
  EXPECT_GE(found, 49);
}

TEST(Conformance, RespectsMaxTests) {
  MealyMachine m = crash_machine();
  Sut sut(m);
  ConformanceConfig cfg;
  cfg.max_tests = 25;
  std::mt19937_64 rng(3);
  ConformanceOutcome out = run_conformance_round(m, sut, cfg, rng);
  EXPECT_FALSE(out.counterexample.has_value());
  EXPECT_EQ(out.tests_run, 25u);
  EXPECT_EQ(sut.stats().testing_queries, 25u);
}

TEST(Conformance, DeterministicUnderSeed) {
  std::mt19937_64 gen(61);
  MealyMachine h = minimize(random_mealy(gen, make_io(2, 2), 5));
  ConformanceConfig cfg;
  std::mt19937_64 r1(9), r2(9);
  ConformanceTester a(h, cfg, r1), b(h, cfg, r2);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.next_test(), b.next_test());
}

namespace {

IoAlphabet go_io() {
  return IoAlphabet(Alphabet({"go"}, AlphabetKind::input),
                    Alphabet({"ok", "crash"}, AlphabetKind::output));
}

// go* with ok answers: go → m, m -ok-> s0. Two states.
SpecDfa go_spec() {
  IoAlphabet io = go_io();
  DfaBuilder b(io.combined());
  StateId s0 = b.add_state(true), m = b.add_state(true);
  b.add_transition(s0, io.combined().at("go"), m);
  b.add_transition(m, io.combined().at("ok"), s0);
  return validate_spec(std::move(b).build(), io, "go-ok");
}

MealyMachine go_machine(const char* answer) {
  IoAlphabet io = go_io();
  MealyBuilder b(io);
  b.add_state();
  b.add_transition(0, Symbol{0}, {io.outputs().at(answer)}, 0);
  return std::move(b).build();
}

}  // namespace

TEST(Mbt, CompliantWalkRunsFullLength) {
  SpecDfa spec = go_spec();
  Sut sut(go_machine("ok"));
  MbtMemory mem(spec.dfa().num_states());
  std::mt19937_64 rng(1);
  TestVerdict v = derive_and_run_test(spec, sut, mem, default_mbt_test_length(spec), rng);
  EXPECT_FALSE(v.failed);
  EXPECT_EQ(v.trace.size(), 4u);
  EXPECT_EQ(sut.stats().testing_queries, 1u);
}

TEST(Mbt, ForbiddenOutputFailsAtPositionTwo) {
  SpecDfa spec = go_spec();
  Sut sut(go_machine("crash"));
  MbtMemory mem;
  std::mt19937_64 rng(1);
  TestVerdict v = derive_and_run_test(spec, sut, mem, 4, rng);
  ASSERT_TRUE(v.failed);
  EXPECT_EQ(v.position, std::optional<std::size_t>(2));
  EXPECT_EQ(v.trace.size(), 1u);
  EXPECT_THROW(derive_and_run_test(spec, sut, mem, 0, rng), PreconditionError);
}

TEST(Mbt, DeadEndPasses) {
  IoAlphabet io = go_io();
  DfaBuilder b(io.combined());
  StateId s0 = b.add_state(true), m = b.add_state(true), end = b.add_state(true);
  b.add_transition(s0, io.combined().at("go"), m);
  b.add_transition(m, io.combined().at("ok"), end);
  SpecDfa spec = validate_spec(std::move(b).build(), io);
  Sut sut(go_machine("ok"));
  MbtMemory mem;
  std::mt19937_64 rng(1);
  TestVerdict v = derive_and_run_test(spec, sut, mem, 10, rng);
  EXPECT_FALSE(v.failed);
  EXPECT_EQ(v.trace.size(), 1u);
}

TEST(MbtProperty, VerdictMatchesOfflineMonitor) {
  std::mt19937_64 gen(67);
  for (int round = 0; round < 100; ++round) {
    IoAlphabet io = make_io(2, 2);
    SpecDfa spec = random_spec(gen, io, 4);
    Sut sut(random_mealy(gen, io, 3, true, 2));
    MbtMemory mem;
    std::mt19937_64 rng(round);
    TestVerdict v = derive_and_run_test(spec, sut, mem, 6, rng);
    auto report = check_trace(spec, v.trace);
    ASSERT_EQ(v.failed, report.has_value());
    if (report) EXPECT_EQ(*v.position, report->word.size());
  }
}

TEST(MbtProperty, MemoryCoversEnabledInputs) {
  // From the initial state every enabled input is tried within |enabled| tests.
  IoAlphabet io = make_io(4, 1);
  DfaBuilder b(io.combined());
  StateId s = b.add_state(true);
  for (Symbol a : io.combined().symbols()) b.add_transition(s, a, s);
  SpecDfa spec = validate_spec(std::move(b).build(), io);
  MealyBuilder mb(io);
  mb.add_state();
  for (Symbol i : io.inputs().symbols()) mb.add_transition(0, i, {Symbol{0}}, 0);
  Sut sut(std::move(mb).build());
  MbtMemory mem;
  std::mt19937_64 rng(5);
  for (int k = 0; k < 4; ++k) derive_and_run_test(spec, sut, mem, 1, rng);
  EXPECT_EQ(mem.at(spec.dfa().initial()).size(), 4u);
}

TEST(MbtSuite, CompliantShallowAndDeep) {
  SpecDfa spec = go_spec();
  {
    Sut sut(go_machine("ok"));
    MbtReport r = run_mbt_suite(spec, sut, 20, 1);
    EXPECT_FALSE(r.found);
    EXPECT_EQ(r.tests_run, 20u);
  }
  MealyMachine crash = crash_machine();
  SpecDfa no_crash = forbid_output_spec(crash.io(), "crash");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Sut sut(crash);
    MbtReport r = run_mbt_suite(no_crash, sut, 10, seed);
    EXPECT_TRUE(r.found);
    // Memory tries both initial inputs within the first two tests.
    EXPECT_LE(*r.tests_to_bug, 2u);
  }
  MealyMachine deep = hidden_bug_machine();
  SpecDfa no_boom = forbid_output_spec(deep.io(), "boom");
  Sut sut(deep);
  EXPECT_FALSE(run_mbt_suite(no_boom, sut, 200, 1).found);
  EXPECT_THROW(run_mbt_suite(no_boom, sut, 0, 1), PreconditionError);
}

TEST(MbtSuite, DeterministicUnderSeed) {
  std::mt19937_64 gen(71);
  IoAlphabet io = make_io(3, 2);
  SpecDfa spec = random_spec(gen, io, 4);
  MealyMachine m = random_mealy(gen, io, 4, true, 2);
  Sut a(m), b(m);
  MbtReport ra = run_mbt_suite(spec, a, 30, 7, 6);
  MbtReport rb = run_mbt_suite(spec, b, 30, 7, 6);
  EXPECT_EQ(ra.tests_run, rb.tests_run);
  EXPECT_EQ(ra.stats, rb.stats);
}
