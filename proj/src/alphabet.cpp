#include "bbckit/alphabet.hpp"

#include <algorithm>
#include <sstream>

#include "bbckit/error.hpp"

namespace bbckit {

Alphabet::Alphabet(std::vector<std::string> names, AlphabetKind kind)
    : names_(std::move(names)), kind_(kind) {
  index_.reserve(names_.size());
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw AlphabetMismatch("empty symbol name");
    if (!index_.emplace(names_[i], i).second) {
      throw AlphabetMismatch("duplicate symbol '" + names_[i] + "'");
    }
  }
}

const std::string& Alphabet::text(Symbol s) const {
  if (!contains(s)) {
    throw AlphabetMismatch("symbol id " + std::to_string(s.id) +
                           " outside alphabet of size " +
                           std::to_string(size()));
  }
  return names_[s.id];
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return Symbol{it->second};
}

Symbol Alphabet::at(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw AlphabetMismatch("unknown symbol '" + std::string(name) + "'");
}

std::vector<Symbol> Alphabet::symbols() const {
  std::vector<Symbol> out(names_.size());
  for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = Symbol{i};
  return out;
}

IoAlphabet::IoAlphabet(Alphabet inputs, Alphabet outputs)
    : inputs_(Alphabet(inputs.names(), AlphabetKind::input)),
      outputs_(Alphabet(outputs.names(), AlphabetKind::output)) {
  std::vector<std::string> all = inputs_.names();
  for (const auto& o : outputs_.names()) {
    if (inputs_.find(o)) {
      throw AlphabetMismatch("symbol '" + o +
                             "' is both an input and an output");
    }
    all.push_back(o);
  }
  combined_ = Alphabet(std::move(all), AlphabetKind::mixed);
}

std::string to_string(WordView w, const Alphabet& sigma) {
  if (w.empty()) return "ε";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ' ';
    out += sigma.text(w[k]);
  }
  return out;
}

Word parse_word(std::string_view text, const Alphabet& sigma) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "ε") continue;
    w.push_back(sigma.at(tok));
  }
  return w;
}

bool shortlex_less(WordView a, WordView b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace bbckit
