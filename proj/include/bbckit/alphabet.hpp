#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bbckit {

/// Interned symbol: an index into the Alphabet that produced it. Symbols
/// from different alphabets must not be mixed.
struct Symbol {
  std::uint32_t id = 0;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

enum class AlphabetKind { input, output, mixed };

/// Ordered, duplicate-free set of symbol names. The construction order is the
/// tie-breaking order used by every search in the library.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names,
                    AlphabetKind kind = AlphabetKind::mixed);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  AlphabetKind kind() const { return kind_; }

  const std::string& text(Symbol s) const;
  std::optional<Symbol> find(std::string_view name) const;
  /// Like find, but throws AlphabetMismatch for unknown names.
  Symbol at(std::string_view name) const;
  bool contains(Symbol s) const { return s.id < names_.size(); }

  const std::vector<std::string>& names() const { return names_; }
  std::vector<Symbol> symbols() const;

  /// Alphabets compare by their ordered names; kind is informational.
  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
  AlphabetKind kind_ = AlphabetKind::mixed;
};

/// Input alphabet I, output alphabet O and their disjoint union I ∪ O.
/// In the combined alphabet inputs come first, then outputs, both in their
/// original order.
class IoAlphabet {
 public:
  IoAlphabet() = default;
  /// Throws AlphabetMismatch when I ∩ O ≠ ∅.
  IoAlphabet(Alphabet inputs, Alphabet outputs);

  const Alphabet& inputs() const { return inputs_; }
  const Alphabet& outputs() const { return outputs_; }
  const Alphabet& combined() const { return combined_; }

  Symbol mixed_input(Symbol i) const { return i; }
  Symbol mixed_output(Symbol o) const {
    return Symbol{static_cast<std::uint32_t>(inputs_.size() + o.id)};
  }
  bool is_input(Symbol mixed) const { return mixed.id < inputs_.size(); }
  Symbol input_of(Symbol mixed) const { return mixed; }
  Symbol output_of(Symbol mixed) const {
    return Symbol{static_cast<std::uint32_t>(mixed.id - inputs_.size())};
  }

  friend bool operator==(const IoAlphabet& a, const IoAlphabet& b) {
    return a.inputs_ == b.inputs_ && a.outputs_ == b.outputs_;
  }

 private:
  Alphabet inputs_{{}, AlphabetKind::input};
  Alphabet outputs_{{}, AlphabetKind::output};
  Alphabet combined_;
};

/// Space separated rendering; the empty word renders as "ε".
std::string to_string(WordView w, const Alphabet& sigma);
/// Inverse of to_string. Accepts "" or "ε" for the empty word.
Word parse_word(std::string_view text, const Alphabet& sigma);

bool shortlex_less(WordView a, WordView b);

}  // namespace bbckit
