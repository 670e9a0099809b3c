#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bbckit/dfa.hpp"
#include "bbckit/mealy.hpp"
#include "bbckit/spec.hpp"

namespace bbckit {

/// Syntax tree of the supported DOT subset.
struct DotDocument {
  struct Node {
    std::string id;
    std::map<std::string, std::string> attrs;
    std::size_t line = 0, column = 0;
  };
  struct Edge {
    std::string src, dst;
    std::map<std::string, std::string> attrs;
    std::size_t line = 0, column = 0;
  };
  std::string name;
  std::map<std::string, std::string> graph_attrs;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

/// Throws ParseError (with line and column) on anything outside the dialect.
DotDocument parse_dot(std::string_view text);

/// Edges labelled "<input>/<o1>,<o2>"; empty text after '/' means ε.
/// Alphabets come from graph attributes `inputs`/`outputs` when present,
/// otherwise from the labels in order of first appearance.
MealyMachine parse_mealy(std::string_view text);

struct ParsedDfa {
  Dfa dfa;
  /// Present when the document declares `inputs` and `outputs`.
  std::optional<IoAlphabet> io;
};

/// Finals are nodes with shape=doublecircle or accepting=true. The alphabet
/// is taken from `alphabet`, or `inputs`+`outputs`, or inferred.
ParsedDfa parse_dfa_document(std::string_view text);
Dfa parse_dfa(std::string_view text);

std::string serialize(const MealyMachine& m);
std::string serialize(const Dfa& a);
/// Like serialize(Dfa) but declares the input/output split.
std::string serialize(const SpecDfa& s);

enum class SpecFormat { plain, bug_automaton, split_io };

/// Parses a DOT DFA and turns it into a validated specification over `io`.
SpecDfa spec_from_dot(std::string_view text, const IoAlphabet& io,
                      SpecFormat format, std::string name);

}  // namespace bbckit
