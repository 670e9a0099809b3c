#include <gtest/gtest.h>

#include <random>

#include "bbckit/benchmarks.hpp"
#include "bbckit/error.hpp"
#include "bbckit/lsharp.hpp"
#include "support/generators.hpp"

using namespace bbckit;
using namespace bbckit::testing;

namespace {

/// Runs the learner with the ground truth as equivalence oracle. Calls
/// `after` on every hypothesis.
template <typename F>
Hypothesis learn_exactly(LSharpLearner& learner, Sut& sut, F after) {
  for (;;) {
    Hypothesis h = learner.refine(sut);
    after(h);
    auto ce = distinguishing_word(h.machine, h.machine.initial(), sut.machine(),
                                  sut.machine().initial());
    if (!ce) return h;
    learner.process_counterexample(mealy_run(sut.machine(), *ce));
  }
}

void expect_tree_consistent(const LSharpLearner& learner, const MealyMachine& h) {
  const ObservationTree& t = learner.tree();
  for (NodeId n = 0; n < t.size(); ++n) {
    Word access = t.access_word(n);
    StateId q = h.initial();
    for (Symbol i : access) q = h.next(q, i);
    for (Symbol i : h.inputs().symbols()) {
      if (t.child(n, i) == ObservationTree::kNone) continue;
      ASSERT_EQ(h.output(q, i), t.output(n, i)) << "node " << n;
    }
  }
}

/// Complete variant of the two-state example: q' answers i with ε.
MealyMachine two_state_complete() {
  MealyMachine m = two_state_machine();
  MealyBuilder b(m.io());
  b.add_state();
  b.add_state();
  b.set_initial(0);
  for (StateId q = 0; q < 2; ++q) {
    for (Symbol i : m.inputs().symbols()) {
      if (m.defined(q, i)) {
        b.add_transition(q, i, m.output(q, i), m.next(q, i));
      } else {
        b.add_transition(q, i, {}, q);
      }
    }
  }
  return std::move(b).build();
}

}  // namespace

TEST(ObservationTree, InsertLookupAndApartness) {
  IoAlphabet io = make_io(2, 2);
  ObservationTree t(2);
  Trace a{{{Symbol{0}, {Symbol{0}}}, {Symbol{1}, {Symbol{1}}}}};
  Trace b{{{Symbol{1}, {Symbol{0}}}, {Symbol{1}, {Symbol{0}}}}};
  NodeId na = t.insert(a);
  t.insert(b);
  EXPECT_EQ(t.size(), 5u);
  EXPECT_EQ(t.access_word(na), a.inputs());
  EXPECT_EQ(*t.lookup(t.root(), a.inputs()), a);
  EXPECT_FALSE(t.lookup(t.root(), Word{Symbol{0}, Symbol{0}}).has_value());
  // Conflicting output.
  Trace bad{{{Symbol{0}, {Symbol{1}}}}};
  EXPECT_THROW(t.insert(bad), NondeterminismError);
  NodeId c0 = *t.find(Word{Symbol{0}});
  NodeId c1 = *t.find(Word{Symbol{1}});
  auto w = t.apart(c0, c1);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(*w, Word{Symbol{1}});
  EXPECT_FALSE(t.apart(c0, c0).has_value());
  // Leaves share no defined input word with anything.
  EXPECT_FALSE(t.apart(na, t.root()).has_value());
}

TEST(ObservationTree, ModifiedStampsPropagateUpwards) {
  ObservationTree t(1);
  Trace one{{{Symbol{0}, {}}}};
  Trace two{{{Symbol{0}, {}}, {Symbol{0}, {}}}};
  t.insert(one);
  const auto after_one = t.stamp();
  t.insert(one);
  EXPECT_EQ(t.stamp(), after_one);  // nothing new
  t.insert(two);
  EXPECT_GT(t.stamp(), after_one);
  EXPECT_EQ(t.modified(t.root()), t.stamp());
  EXPECT_EQ(t.modified(*t.find(Word{Symbol{0}})), t.stamp());
}

TEST(LSharp, OneStateMachine) {
  IoAlphabet io = make_io(3, 1);
  MealyBuilder b(io);
  b.add_state();
  for (Symbol i : io.inputs().symbols()) b.add_transition(0, i, {Symbol{0}}, 0);
  Sut sut(std::move(b).build());
  LSharpLearner learner(io);
  EXPECT_EQ(learner.output_query_count(), QueryStats{});
  Hypothesis h = learner.refine(sut);
  EXPECT_EQ(h.machine.num_states(), 1u);
  EXPECT_EQ(sut.stats().learning_queries, 3u);
}

TEST(LSharp, TwoStateExample) {
  Sut sut(two_state_complete());
  LSharpLearner learner(sut.io());
  Hypothesis h = learn_exactly(learner, sut, [](const Hypothesis&) {});
  ASSERT_EQ(h.machine.num_states(), 2u);
  const Alphabet& in = h.machine.inputs();
  Trace t = mealy_run(h.machine, parse_word("i j j", in));
  EXPECT_EQ(t.steps[0].output.size(), 2u);
  EXPECT_EQ(t.steps[1].output.size(), 0u);
  Trace u = mealy_run(h.machine, parse_word("j", in));
  EXPECT_EQ(u.steps[0].output.size(), 1u);
}

TEST(LSharp, InvariantsAlongRandomRuns) {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 25; ++round) {
    IoAlphabet io = make_io(uniform(rng, 1, 3), uniform(rng, 1, 3));
    Sut sut(random_mealy(rng, io, uniform(rng, 1, 10)));
    LSharpLearner learner(io);
    std::vector<Trace> processed;
    std::size_t last_tree = 0;
    Hypothesis h = learn_exactly(learner, sut, [&](const Hypothesis& h) {
      EXPECT_TRUE(h.machine.is_complete());
      expect_tree_consistent(learner, h.machine);
      // Basis nodes are pairwise apart and the witnesses separate them.
      const auto& basis = learner.basis();
      for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = a + 1; b < basis.size(); ++b) {
          auto w = learner.tree().apart(basis[a], basis[b]);
          ASSERT_TRUE(w.has_value());
          Word wa = learner.tree().access_word(basis[a]);
          Word wb = learner.tree().access_word(basis[b]);
          Word xa = wa, xb = wb;
          xa.insert(xa.end(), w->begin(), w->end());
          xb.insert(xb.end(), w->begin(), w->end());
          Trace ta = mealy_run(sut.machine(), xa), tb = mealy_run(sut.machine(), xb);
          EXPECT_NE(Trace{std::vector<TraceStep>(ta.steps.begin() + wa.size(), ta.steps.end())},
                    Trace{std::vector<TraceStep>(tb.steps.begin() + wb.size(), tb.steps.end())});
        }
      }
      // Processed counterexamples stay fixed.
      for (const Trace& ce : processed) EXPECT_EQ(mealy_run(h.machine, ce.inputs()), ce);
      EXPECT_GT(learner.tree().size(), last_tree);
      last_tree = learner.tree().size();
      auto ce = distinguishing_word(h.machine, h.machine.initial(), sut.machine(),
                                    sut.machine().initial());
      if (ce) processed.push_back(mealy_run(sut.machine(), *ce));
    });
    EXPECT_TRUE(minimize_and_isomorphic(h.machine, sut.machine()));
    // Learner counters cover exactly the queries sent to the SUT.
    EXPECT_EQ(learner.output_query_count().learning_queries, sut.stats().learning_queries);
    EXPECT_EQ(learner.output_query_count().learning_steps, sut.stats().learning_steps);
  }
}

TEST(LSharp, RejectsNonCounterexamples) {
  Sut sut(crash_machine());
  LSharpLearner learner(sut.io());
  EXPECT_THROW(learner.process_counterexample(Trace{}), PreconditionError);
  Hypothesis h = learner.refine(sut);
  Trace agree = mealy_run(h.machine, parse_word("x y", h.machine.inputs()));
  EXPECT_THROW(learner.process_counterexample(agree), NotACounterexample);
}

TEST(LSharp, CounterexampleAtFirstStepIsReproduced) {
  // Machine: x toggles between ok and crash outputs on y.
  IoAlphabet io(Alphabet({"x", "y"}), Alphabet({"ok", "crash"}));
  MealyBuilder b(io);
  b.add_state();
  b.add_state();
  b.add_transition(0, Symbol{0}, {Symbol{0}}, 1);
  b.add_transition(0, Symbol{1}, {Symbol{0}}, 0);
  b.add_transition(1, Symbol{0}, {Symbol{0}}, 0);
  b.add_transition(1, Symbol{1}, {Symbol{1}}, 1);
  Sut sut(std::move(b).build());
  LSharpLearner learner(io);
  Hypothesis h = learner.refine(sut);
  auto ce = distinguishing_word(h.machine, 0, sut.machine(), 0);
  ASSERT_TRUE(ce.has_value());
  Trace t = mealy_run(sut.machine(), *ce);
  learner.process_counterexample(t);
  Hypothesis next = learner.refine(sut);
  EXPECT_EQ(mealy_run(next.machine, t.inputs()), t);
}

TEST(LSharp, LockCounterexampleGrowsHypothesis) {
  LockOptions opts;
  opts.vault_states = 10;
  Sut sut(combination_lock(opts));
  LSharpLearner learner(sut.io());
  Hypothesis h = learner.refine(sut);
  Word open = parse_word("c a d b b d a c", sut.io().inputs());
  Trace t = mealy_run(sut.machine(), open);
  ASSERT_NE(mealy_run(h.machine, open), t);
  learner.process_counterexample(t);
  Hypothesis next = learner.refine(sut);
  EXPECT_GT(next.machine.num_states(), h.machine.num_states());
  EXPECT_EQ(mealy_run(next.machine, open), t);
}

TEST(LSharp, SurvivesAbortedQueries) {
  // Budget exhaustion mid-refine leaves the learner usable.
  std::mt19937_64 rng(41);
  IoAlphabet io = make_io(3, 2);
  Sut sut(random_mealy(rng, io, 12));
  LSharpLearner learner(io);
  sut.set_budget({50, std::nullopt});
  EXPECT_THROW(learn_exactly(learner, sut, [](const Hypothesis&) {}), BudgetExceeded);
  auto partial = learner.partial_hypothesis();
  ASSERT_TRUE(partial.has_value());
  EXPECT_EQ(partial->num_states(), learner.basis().size());
  sut.suspend_budget();
  Hypothesis h = learn_exactly(learner, sut, [](const Hypothesis&) {});
  EXPECT_TRUE(minimize_and_isomorphic(h.machine, sut.machine()));
}
