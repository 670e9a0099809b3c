#include "bbckit/lsharp.hpp"

#include <algorithm>
#include <deque>

#include "bbckit/error.hpp"

namespace bbckit {

LSharpLearner::LSharpLearner(IoAlphabet io)
    : io_(std::move(io)), tree_(io_.inputs().size()) {
  basis_.push_back(tree_.root());
  basis_index_.assign(1, 0);
}

std::optional<Word> LSharpLearner::witness(NodeId a, NodeId b) {
  auto key = std::minmax(a, b);
  if (auto it = apart_cache_.find(key); it != apart_cache_.end()) {
    return it->second;
  }
  auto w = tree_.apart(a, b);
  if (w) apart_cache_.emplace(key, *w);
  return w;
}

Trace LSharpLearner::output_query(Sut& sut, const Word& inputs) {
  if (auto known = tree_.lookup(tree_.root(), inputs)) return *known;
  Trace t;
  try {
    t = sut.query(inputs, QueryKind::learning);
  } catch (const QueryAborted& aborted) {
    ++stats_.learning_queries;
    stats_.learning_steps += aborted.partial().size();
    tree_.insert(aborted.partial());
    throw;
  }
  ++stats_.learning_queries;
  stats_.learning_steps += t.size();
  tree_.insert(t);
  return t;
}

std::vector<NodeId> LSharpLearner::frontier() const {
  std::vector<std::pair<Word, NodeId>> found;
  for (NodeId b : basis_) {
    for (Symbol i : io_.inputs().symbols()) {
      NodeId c = tree_.child(b, i);
      if (c != ObservationTree::kNone && !is_basis(c)) {
        found.emplace_back(tree_.access_word(c), c);
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    return shortlex_less(x.first, y.first);
  });
  std::vector<NodeId> out;
  out.reserve(found.size());
  for (auto& [w, n] : found) out.push_back(n);
  return out;
}

const std::vector<std::size_t>& LSharpLearner::candidates(NodeId f) {
  Candidates& c = candidates_[f];
  auto apart_from = [&](std::size_t idx) {
    return witness(f, basis_[idx]).has_value();
  };
  // Apartness is monotone, so only pairs whose subtrees changed since the
  // last check need another look.
  std::erase_if(c.basis, [&](std::size_t idx) {
    if (tree_.modified(f) <= c.checked_at &&
        tree_.modified(basis_[idx]) <= c.checked_at) {
      return false;
    }
    return apart_from(idx);
  });
  for (; c.considered < basis_.size(); ++c.considered) {
    if (!apart_from(c.considered)) c.basis.push_back(c.considered);
  }
  c.checked_at = tree_.stamp();
  return c.basis;
}

StateId LSharpLearner::hyp_state(const Hypothesis& h, WordView w) const {
  StateId q = h.machine.initial();
  for (Symbol i : w) q = h.machine.next(q, i);
  return q;
}

Hypothesis LSharpLearner::build_hypothesis() {
  Hypothesis h;
  MealyBuilder b(io_);
  for (std::size_t k = 0; k < basis_.size(); ++k) b.add_state();
  b.set_initial(0);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    NodeId node = basis_[k];
    for (Symbol i : io_.inputs().symbols()) {
      NodeId c = tree_.child(node, i);
      std::size_t target =
          is_basis(c) ? basis_index_[c] : candidates(c).front();
      b.add_transition(static_cast<StateId>(k), i, tree_.output(node, i),
                       static_cast<StateId>(target));
    }
  }
  h.machine = std::move(b).build();
  h.basis = basis_;
  for (NodeId n : basis_) h.access.push_back(tree_.access_word(n));
  return h;
}

std::optional<Word> LSharpLearner::find_inconsistency(const Hypothesis& h) const {
  std::deque<std::pair<NodeId, StateId>> queue{{tree_.root(), h.machine.initial()}};
  while (!queue.empty()) {
    auto [n, q] = queue.front();
    queue.pop_front();
    for (Symbol i : io_.inputs().symbols()) {
      NodeId c = tree_.child(n, i);
      if (c == ObservationTree::kNone) continue;
      if (tree_.output(n, i) != h.machine.output(q, i)) return tree_.access_word(n);
      queue.emplace_back(c, h.machine.next(q, i));
    }
  }
  return std::nullopt;
}

void LSharpLearner::process_counter_example(Sut& sut, const Hypothesis& h,
                                            Word sigma) {
  // Invariant: node(sigma) is apart from the basis node of δ_H(sigma).
  for (;;) {
    auto r = tree_.find(sigma);
    if (!r || is_basis(*r) || is_basis(tree_.parent(*r))) return;
    StateId q = hyp_state(h, sigma);
    auto eta = witness(*r, h.basis[q]);
    if (!eta) return;

    std::size_t rho = 0;
    for (NodeId n = tree_.root(); is_basis(n); n = tree_.child(n, sigma[rho++])) {
    }
    const std::size_t half = (rho + sigma.size()) / 2;
    Word head(sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(half));
    Word tail(sigma.begin() + static_cast<std::ptrdiff_t>(half), sigma.end());
    StateId q1 = hyp_state(h, head);

    Word probe = h.access[q1];
    probe.insert(probe.end(), tail.begin(), tail.end());
    const std::size_t shifted_len = probe.size();
    probe.insert(probe.end(), eta->begin(), eta->end());
    output_query(sut, probe);

    NodeId r1 = *tree_.find(head);
    if (witness(r1, h.basis[q1])) {
      sigma = std::move(head);
    } else {
      probe.resize(shifted_len);
      sigma = std::move(probe);
    }
  }
}

bool LSharpLearner::promote_all() {
  bool any = false;
  for (;;) {
    basis_index_.resize(tree_.size(), SIZE_MAX);
    bool promoted = false;
    for (NodeId f : frontier()) {
      if (candidates(f).empty()) {
        basis_index_[f] = basis_.size();
        basis_.push_back(f);
        candidates_.erase(f);
        promoted = any = true;
        break;
      }
    }
    if (!promoted) return any;
  }
}

std::optional<MealyMachine> LSharpLearner::partial_hypothesis() {
  promote_all();
  MealyBuilder b(io_);
  for (std::size_t k = 0; k < basis_.size(); ++k) b.add_state();
  b.set_initial(0);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    for (Symbol i : io_.inputs().symbols()) {
      NodeId c = tree_.child(basis_[k], i);
      if (c == ObservationTree::kNone) continue;
      std::size_t target = is_basis(c) ? basis_index_[c] : candidates(c).front();
      b.add_transition(static_cast<StateId>(k), i, tree_.output(basis_[k], i),
                       static_cast<StateId>(target));
    }
  }
  return std::move(b).build();
}

Hypothesis LSharpLearner::refine(Sut& sut) {
  for (;;) {
    basis_index_.resize(tree_.size(), SIZE_MAX);

    if (promote_all()) continue;
    auto front = frontier();
    bool changed = false;

    // Extension.
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      for (Symbol i : io_.inputs().symbols()) {
        if (tree_.child(basis_[k], i) == ObservationTree::kNone) {
          Word w = tree_.access_word(basis_[k]);
          w.push_back(i);
          output_query(sut, w);
          changed = true;
        }
      }
    }
    if (changed) continue;

    // Separation.
    for (NodeId f : front) {
      const auto& c = candidates(f);
      if (c.size() < 2) continue;
      auto w = witness(basis_[c[0]], basis_[c[1]]);
      Word probe = tree_.access_word(f);
      probe.insert(probe.end(), w->begin(), w->end());
      output_query(sut, probe);
      changed = true;
      break;
    }
    if (changed) continue;

    Hypothesis h = build_hypothesis();
    if (auto sigma = find_inconsistency(h)) {
      process_counter_example(sut, h, std::move(*sigma));
      continue;
    }
    current_ = h;
    return h;
  }
}

void LSharpLearner::process_counterexample(const Trace& ce) {
  if (!current_) {
    throw PreconditionError("no hypothesis to refute yet");
  }
  auto predicted = mealy_run(current_->machine, ce.inputs());
  if (predicted == ce) {
    throw NotACounterexample("hypothesis already agrees with the trace " +
                             to_string(ce, io_));
  }
  tree_.insert(ce);
}

}  // namespace bbckit
