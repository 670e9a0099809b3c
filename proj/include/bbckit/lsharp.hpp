#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bbckit/mealy.hpp"
#include "bbckit/observation_tree.hpp"
#include "bbckit/sut.hpp"

namespace bbckit {

/// Complete hypothesis plus the tree node backing each of its states.
struct Hypothesis {
  MealyMachine machine;
  std::vector<NodeId> basis;
  std::vector<Word> access;
};

/// Contract between the black-box checking loop and an active learner.
class Learner {
 public:
  virtual ~Learner() = default;
  /// Learning queries until a hypothesis consistent with all observations
  /// is available. Propagates BudgetExceeded and QueryAborted; the learner
  /// stays usable afterwards and refine can simply be called again.
  virtual Hypothesis refine(Sut& sut) = 0;
  /// Records an observed trace on which the last hypothesis is wrong.
  /// Throws NotACounterexample when the hypothesis already agrees.
  virtual void process_counterexample(const Trace& ce) = 0;
  /// Learning queries and steps actually sent to the SUT by this learner.
  virtual QueryStats output_query_count() const = 0;
  /// Best model of the observations so far, built without queries. It may
  /// be partial; used when the budget ends in the middle of refine.
  virtual std::optional<MealyMachine> partial_hypothesis() { return std::nullopt; }
};

/// L# with separating sequences: observation tree, basis of pairwise apart
/// nodes, frontier identification, and counterexample analysis by binary
/// splitting of the disagreeing suffix.
class LSharpLearner : public Learner {
 public:
  explicit LSharpLearner(IoAlphabet io);

  Hypothesis refine(Sut& sut) override;
  void process_counterexample(const Trace& ce) override;
  QueryStats output_query_count() const override { return stats_; }
  std::optional<MealyMachine> partial_hypothesis() override;

  const ObservationTree& tree() const { return tree_; }
  const std::vector<NodeId>& basis() const { return basis_; }
  const std::optional<Hypothesis>& hypothesis() const { return current_; }
  /// Stored separating word for two basis nodes.
  std::optional<Word> witness(NodeId a, NodeId b);

 private:
  Trace output_query(Sut& sut, const Word& inputs);
  std::vector<NodeId> frontier() const;
  const std::vector<std::size_t>& candidates(NodeId frontier_node);
  bool is_basis(NodeId n) const {
    return n < basis_index_.size() && basis_index_[n] != SIZE_MAX;
  }
  Hypothesis build_hypothesis();
  /// Applies promotion until no frontier node is apart from the whole basis.
  bool promote_all();
  std::optional<Word> find_inconsistency(const Hypothesis& h) const;
  void process_counter_example(Sut& sut, const Hypothesis& h, Word sigma);
  StateId hyp_state(const Hypothesis& h, WordView w) const;

  IoAlphabet io_;
  ObservationTree tree_;
  std::vector<NodeId> basis_;
  std::vector<std::size_t> basis_index_;  // by node, SIZE_MAX when not basis
  std::map<std::pair<NodeId, NodeId>, Word> apart_cache_;
  struct Candidates {
    std::vector<std::size_t> basis;  // indices not known to be apart
    std::size_t considered = 0;      // basis prefix already examined
    std::uint64_t checked_at = 0;    // tree stamp of the last full check
  };
  std::map<NodeId, Candidates> candidates_;
  std::optional<Hypothesis> current_;
  QueryStats stats_;
};

}  // namespace bbckit
