#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbckit/alphabet.hpp"
#include "bbckit/trace.hpp"

namespace bbckit {

using NodeId = std::uint32_t;

/// Prefix tree of every input word sent to the SUT, with the output word
/// observed on each edge. Nodes are never removed and recorded outputs never
/// change.
class ObservationTree {
 public:
  static constexpr NodeId kNone = UINT32_MAX;

  explicit ObservationTree(std::size_t num_inputs);

  NodeId root() const { return 0; }
  std::size_t size() const { return parent_.size(); }
  std::size_t num_inputs() const { return num_inputs_; }

  NodeId child(NodeId n, Symbol i) const { return child_[slot(n, i)]; }
  /// Only meaningful when child(n, i) != kNone.
  const Word& output(NodeId n, Symbol i) const { return output_[slot(n, i)]; }
  NodeId parent(NodeId n) const { return parent_[n]; }
  std::size_t depth(NodeId n) const { return depth_[n]; }
  /// Insertion stamp of the latest change anywhere below n (inclusive).
  std::uint64_t modified(NodeId n) const { return modified_[n]; }
  std::uint64_t stamp() const { return stamp_; }

  /// Grafts `steps` below `from`, returning the last node. Throws
  /// NondeterminismError when an observation contradicts the tree.
  NodeId insert(NodeId from, const Trace& steps);
  NodeId insert(const Trace& t) { return insert(root(), t); }

  std::optional<NodeId> find(WordView inputs) const;
  std::optional<NodeId> find_from(NodeId n, WordView inputs) const;
  /// Recorded outputs along `inputs` from n, if the whole path exists.
  std::optional<Trace> lookup(NodeId n, WordView inputs) const;

  Word access_word(NodeId n) const;

  /// A separating input word if the two nodes are apart, i.e. some input
  /// word defined below both yields different outputs.
  std::optional<Word> apart(NodeId a, NodeId b) const;

  std::string to_dot(const IoAlphabet& io) const;

 private:
  std::size_t slot(NodeId n, Symbol i) const {
    return static_cast<std::size_t>(n) * num_inputs_ + i.id;
  }

  std::size_t num_inputs_;
  std::vector<NodeId> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<Symbol> via_;
  std::vector<NodeId> child_;
  std::vector<Word> output_;
  std::vector<std::uint64_t> modified_;
  std::uint64_t stamp_ = 0;
};

}  // namespace bbckit
