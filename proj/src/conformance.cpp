#include "bbckit/conformance.hpp"

#include <deque>

#include "bbckit/error.hpp"

namespace bbckit {

namespace {

std::vector<Word> bfs_state_cover(const MealyMachine& h) {
  std::vector<Word> cover;
  std::vector<bool> seen(h.num_states(), false);
  std::vector<StateId> order;
  std::vector<Word> access(h.num_states());
  std::deque<StateId> queue{h.initial()};
  seen[h.initial()] = true;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    cover.push_back(access[q]);
    for (Symbol i : h.inputs().symbols()) {
      StateId t = h.next(q, i);
      if (seen[t]) continue;
      seen[t] = true;
      access[t] = access[q];
      access[t].push_back(i);
      queue.push_back(t);
    }
  }
  return cover;
}

}  // namespace

ConformanceTester::ConformanceTester(const MealyMachine& h,
                                     const ConformanceConfig& cfg,
                                     std::mt19937_64& rng)
    : h_(h), rng_(rng), infix_len_(1.0 / (1.0 + cfg.expected_infix_length)) {
  if (!(cfg.expected_infix_length > 0)) {
    throw PreconditionError("expected infix length must be positive");
  }
  if (!h.is_complete()) {
    throw PreconditionError("conformance testing needs a complete hypothesis");
  }
  cover_ = bfs_state_cover(h);
  for (const Word& access : cover_) {
    StateId q = h.initial();
    for (Symbol i : access) q = h.next(q, i);
    cover_states_.push_back(q);
  }
}

const Word& ConformanceTester::separating(StateId a, StateId b) {
  auto key = std::minmax(a, b);
  auto it = separating_.find(key);
  if (it == separating_.end()) {
    Word w = distinguishing_word(h_, a, h_, b).value_or(Word{});
    it = separating_.emplace(key, std::move(w)).first;
  }
  return it->second;
}

Word ConformanceTester::next_test() {
  std::uniform_int_distribution<std::size_t> pick_state(0, cover_.size() - 1);
  std::uniform_int_distribution<std::uint32_t> pick_input(
      0, static_cast<std::uint32_t>(h_.inputs().size() - 1));

  Word test = cover_[pick_state(rng_)];
  last_infix_ = infix_len_(rng_);
  for (std::size_t k = 0; k < last_infix_; ++k) test.push_back(Symbol{pick_input(rng_)});

  StateId reached = h_.initial();
  for (Symbol i : test) reached = h_.next(reached, i);
  last_pair_ = {reached, reached};
  if (cover_.size() > 1) {
    // Uniform over the other reachable states.
    std::uniform_int_distribution<std::size_t> pick_other(0, cover_.size() - 2);
    std::size_t k = pick_other(rng_);
    StateId other = cover_states_[k];
    if (other == reached) other = cover_states_.back();
    last_pair_ = {reached, other};
    const Word& suffix = separating(reached, other);
    test.insert(test.end(), suffix.begin(), suffix.end());
  }
  return test;
}

Word next_conformance_test(const MealyMachine& h, const ConformanceConfig& cfg,
                           std::mt19937_64& rng) {
  ConformanceTester tester(h, cfg, rng);
  return tester.next_test();
}

ConformanceOutcome run_conformance_round(const MealyMachine& h, Sut& sut,
                                         const ConformanceConfig& cfg,
                                         std::mt19937_64& rng) {
  ConformanceOutcome out;
  if (!cfg.max_tests &&
      !distinguishing_word(h, h.initial(), sut.machine(), sut.machine().initial())) {
    out.skipped_equivalent = true;
    return out;
  }
  ConformanceTester tester(h, cfg, rng);
  const std::uint64_t cap = sut.budget().max_testing_queries_per_round
                                ? *sut.budget().max_testing_queries_per_round
                                : UINT64_MAX;
  while ((!cfg.max_tests || out.tests_run < *cfg.max_tests) && out.tests_run < cap) {
    Word test = tester.next_test();
    Trace observed = sut.query(test, QueryKind::testing);
    ++out.tests_run;
    if (observed != mealy_run(h, test)) {
      out.counterexample = std::move(observed);
      return out;
    }
  }
  return out;
}

}  // namespace bbckit
