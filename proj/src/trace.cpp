#include "bbckit/trace.hpp"

namespace bbckit {

Word Trace::inputs() const {
  Word w;
  w.reserve(steps.size());
  for (const auto& s : steps) w.push_back(s.input);
  return w;
}

Trace Trace::prefix(std::size_t n) const {
  Trace t;
  t.steps.assign(steps.begin(),
                 steps.begin() + static_cast<std::ptrdiff_t>(
                                     std::min(n, steps.size())));
  return t;
}

Word interleave(const Trace& t, const IoAlphabet& io) {
  Word w;
  for (const auto& s : t.steps) {
    w.push_back(io.mixed_input(s.input));
    for (Symbol o : s.output) w.push_back(io.mixed_output(o));
  }
  return w;
}

std::string to_string(const Trace& t, const IoAlphabet& io) {
  if (t.empty()) return "ε";
  std::string out;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    if (k) out += ' ';
    out += io.inputs().text(t.steps[k].input);
    out += '/';
    for (std::size_t j = 0; j < t.steps[k].output.size(); ++j) {
      if (j) out += ',';
      out += io.outputs().text(t.steps[k].output[j]);
    }
  }
  return out;
}

}  // namespace bbckit
