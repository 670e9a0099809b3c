#include "bbckit/observation_tree.hpp"

#include <sstream>

#include "bbckit/error.hpp"

namespace bbckit {

ObservationTree::ObservationTree(std::size_t num_inputs)
    : num_inputs_(num_inputs),
      parent_{kNone},
      depth_{0},
      via_{Symbol{}},
      child_(num_inputs, kNone),
      output_(num_inputs),
      modified_{0} {}

NodeId ObservationTree::insert(NodeId from, const Trace& steps) {
  NodeId n = from;
  bool grew = false;
  for (const auto& step : steps.steps) {
    if (step.input.id >= num_inputs_) {
      throw AlphabetMismatch("trace input outside the tree's input alphabet");
    }
    NodeId c = child(n, step.input);
    if (c != kNone) {
      if (output(n, step.input) != step.output) {
        throw NondeterminismError(
            "observation contradicts the tree: the SUT is not deterministic");
      }
      n = c;
      continue;
    }
    if (!grew) {
      grew = true;
      ++stamp_;
      for (NodeId up = n; up != kNone; up = parent_[up]) modified_[up] = stamp_;
    }
    c = static_cast<NodeId>(parent_.size());
    child_[slot(n, step.input)] = c;
    output_[slot(n, step.input)] = step.output;
    parent_.push_back(n);
    depth_.push_back(depth_[n] + 1);
    via_.push_back(step.input);
    modified_.push_back(stamp_);
    child_.resize(child_.size() + num_inputs_, kNone);
    output_.resize(output_.size() + num_inputs_);
    n = c;
  }
  return n;
}

std::optional<NodeId> ObservationTree::find_from(NodeId n, WordView inputs) const {
  for (Symbol i : inputs) {
    n = child(n, i);
    if (n == kNone) return std::nullopt;
  }
  return n;
}

std::optional<NodeId> ObservationTree::find(WordView inputs) const {
  return find_from(root(), inputs);
}

std::optional<Trace> ObservationTree::lookup(NodeId n, WordView inputs) const {
  Trace t;
  t.steps.reserve(inputs.size());
  for (Symbol i : inputs) {
    NodeId c = child(n, i);
    if (c == kNone) return std::nullopt;
    t.steps.push_back({i, output(n, i)});
    n = c;
  }
  return t;
}

Word ObservationTree::access_word(NodeId n) const {
  Word w(depth_[n]);
  for (std::size_t k = w.size(); k > 0; --k) {
    w[k - 1] = via_[n];
    n = parent_[n];
  }
  return w;
}

std::optional<Word> ObservationTree::apart(NodeId a, NodeId b) const {
  struct Frame {
    NodeId a, b;
    std::uint32_t depth;
    Symbol via;
  };
  // Depth-first over the common subtree; `path` holds the current word.
  std::vector<Frame> stack{{a, b, 0, Symbol{}}};
  Word path;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    path.resize(f.depth);
    if (f.depth > 0) path.back() = f.via;
    for (std::uint32_t k = 0; k < num_inputs_; ++k) {
      Symbol i{k};
      NodeId ca = child(f.a, i), cb = child(f.b, i);
      if (ca == kNone || cb == kNone) continue;
      if (output(f.a, i) != output(f.b, i)) {
        Word w = path;
        w.push_back(i);
        return w;
      }
      stack.push_back({ca, cb, f.depth + 1, i});
    }
  }
  return std::nullopt;
}

std::string ObservationTree::to_dot(const IoAlphabet& io) const {
  std::ostringstream out;
  out << "digraph g {\n";
  for (NodeId n = 0; n < size(); ++n) out << "  t" << n << " [shape=circle];\n";
  out << "  __start0 [shape=none,label=\"\"];\n  __start0 -> t0;\n";
  for (NodeId n = 0; n < size(); ++n) {
    for (std::uint32_t k = 0; k < num_inputs_; ++k) {
      Symbol i{k};
      NodeId c = child(n, i);
      if (c == kNone) continue;
      out << "  t" << n << " -> t" << c << " [label=\"" << io.inputs().text(i)
          << '/';
      const Word& w = output(n, i);
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (j) out << ',';
        out << io.outputs().text(w[j]);
      }
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace bbckit
