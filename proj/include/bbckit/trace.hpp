#pragma once

#include <vector>

#include "bbckit/alphabet.hpp"

namespace bbckit {

struct TraceStep {
  Symbol input;
  Word output;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// Inputs paired with the output word each one produced.
struct Trace {
  std::vector<TraceStep> steps;

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  Word inputs() const;
  Trace prefix(std::size_t n) const;
  friend bool operator==(const Trace&, const Trace&) = default;
};

/// i₁·w₁·i₂·w₂·… over the combined alphabet of `io`.
Word interleave(const Trace& t, const IoAlphabet& io);

/// "i/o1,o2 j/" rendering, one token per step; "ε" for the empty trace.
std::string to_string(const Trace& t, const IoAlphabet& io);

}  // namespace bbckit
