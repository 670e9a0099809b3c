#include "bbckit/dot.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "bbckit/error.hpp"

namespace bbckit {

namespace {

enum class Tok { id, arrow, lbrace, rbrace, lbracket, rbracket, equals, comma,
                 semicolon, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space_and_comments();
    const std::size_t line = line_, col = col_;
    if (pos_ >= src_.size()) return {Tok::end, "", line, col};
    char c = src_[pos_];
    auto single = [&](Tok k) {
      advance();
      return Token{k, std::string(1, c), line, col};
    };
    switch (c) {
      case '{': return single(Tok::lbrace);
      case '}': return single(Tok::rbrace);
      case '[': return single(Tok::lbracket);
      case ']': return single(Tok::rbracket);
      case '=': return single(Tok::equals);
      case ',': return single(Tok::comma);
      case ';': return single(Tok::semicolon);
      default: break;
    }
    if (c == '-' && peek(1) == '>') {
      advance();
      advance();
      return {Tok::arrow, "->", line, col};
    }
    if (c == '"') {
      advance();
      std::string text;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) {
          advance();
          if (src_[pos_] != '"' && src_[pos_] != '\\') text += '\\';
        }
        text += src_[pos_];
        advance();
      }
      if (pos_ >= src_.size()) throw ParseError("unterminated string", line, col);
      advance();
      return {Tok::id, text, line, col};
    }
    if (is_id_char(c)) {
      std::string text;
      while (pos_ < src_.size() && is_id_char(src_[pos_])) {
        if (src_[pos_] == '-' && peek(1) == '>') break;
        text += src_[pos_];
        advance();
      }
      return {Tok::id, text, line, col};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }

 private:
  static bool is_id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '.' || c == '-' || (static_cast<unsigned char>(c) & 0x80);
  }
  char peek(std::size_t k) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space_and_comments() {
    for (;;) {
      while (pos_ < src_.size() &&
             std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      }
      if (pos_ >= src_.size()) return;
      const bool line_start = col_ == 1;
      if (src_[pos_] == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (src_[pos_] == '#' && line_start) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (src_[pos_] == '/' && peek(1) == '*') {
        const std::size_t line = line_, col = col_;
        advance();
        advance();
        while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/')) {
          advance();
        }
        if (pos_ >= src_.size()) throw ParseError("unterminated comment", line, col);
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { shift(); }

  DotDocument parse() {
    DotDocument doc;
    if (cur_.kind == Tok::id && cur_.text == "strict") shift();
    if (cur_.kind != Tok::id || cur_.text != "digraph") {
      fail("expected 'digraph'");
    }
    shift();
    if (cur_.kind == Tok::id) {
      doc.name = cur_.text;
      shift();
    }
    expect(Tok::lbrace, "'{'");
    while (cur_.kind != Tok::rbrace) {
      if (cur_.kind == Tok::end) fail("missing '}'");
      statement(doc);
      if (cur_.kind == Tok::semicolon) shift();
    }
    shift();
    if (cur_.kind != Tok::end) fail("trailing content after graph");
    return doc;
  }

 private:
  void statement(DotDocument& doc) {
    if (cur_.kind != Tok::id) fail("expected a statement");
    Token head = cur_;
    shift();
    if (head.text == "graph" || head.text == "node" || head.text == "edge") {
      if (cur_.kind == Tok::lbracket) {
        auto attrs = attr_list();
        if (head.text == "graph") {
          for (auto& [k, v] : attrs) doc.graph_attrs[k] = v;
        }
        return;
      }
    }
    if (head.text == "subgraph") fail("subgraphs are not supported", head);
    if (cur_.kind == Tok::equals) {
      shift();
      if (cur_.kind != Tok::id) fail("expected a value");
      doc.graph_attrs[head.text] = cur_.text;
      shift();
      return;
    }
    if (cur_.kind == Tok::arrow) {
      shift();
      if (cur_.kind != Tok::id) fail("expected an edge target");
      DotDocument::Edge e{head.text, cur_.text, {}, head.line, head.column};
      shift();
      if (cur_.kind == Tok::arrow) fail("edge chains are not supported");
      if (cur_.kind == Tok::lbracket) e.attrs = attr_list();
      doc.edges.push_back(std::move(e));
      return;
    }
    DotDocument::Node n{head.text, {}, head.line, head.column};
    if (cur_.kind == Tok::lbracket) n.attrs = attr_list();
    doc.nodes.push_back(std::move(n));
  }

  std::map<std::string, std::string> attr_list() {
    expect(Tok::lbracket, "'['");
    std::map<std::string, std::string> attrs;
    while (cur_.kind != Tok::rbracket) {
      if (cur_.kind != Tok::id) fail("expected an attribute name");
      std::string key = cur_.text;
      shift();
      std::string value = "true";
      if (cur_.kind == Tok::equals) {
        shift();
        if (cur_.kind != Tok::id) fail("expected an attribute value");
        value = cur_.text;
        shift();
      }
      attrs[key] = value;
      if (cur_.kind == Tok::comma || cur_.kind == Tok::semicolon) shift();
    }
    shift();
    return attrs;
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    shift();
  }
  [[noreturn]] void fail(const std::string& msg) { fail(msg, cur_); }
  [[noreturn]] void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg + (at.kind == Tok::end ? " at end of input"
                                                 : " near '" + at.text + "'"),
                     at.line, at.column);
  }
  void shift() { cur_ = lex_.next(); }

  Lexer lex_;
  Token cur_{};
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string t = trim(s);
  if (t.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = t.find(',', start);
    out.push_back(trim(std::string_view(t).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bool is_start_node(const std::string& id) { return id.rfind("__start", 0) == 0; }

/// States in first-appearance order plus the initial state.
struct StateTable {
  std::vector<std::string> names;
  std::map<std::string, StateId> index;
  StateId initial = 0;

  StateId intern(const std::string& id) {
    auto [it, fresh] = index.emplace(id, static_cast<StateId>(names.size()));
    if (fresh) names.push_back(id);
    return it->second;
  }
};

StateTable collect_states(const DotDocument& doc) {
  StateTable t;
  for (const auto& n : doc.nodes) {
    if (!is_start_node(n.id)) t.intern(n.id);
  }
  for (const auto& e : doc.edges) {
    if (!is_start_node(e.src)) t.intern(e.src);
    if (!is_start_node(e.dst)) t.intern(e.dst);
  }
  std::vector<std::string> markers;
  std::size_t line = 1, col = 1;
  for (const auto& e : doc.edges) {
    if (is_start_node(e.src)) {
      markers.push_back(e.dst);
      line = e.line;
      col = e.column;
    }
  }
  if (auto it = doc.graph_attrs.find("initial"); it != doc.graph_attrs.end()) {
    markers.push_back(it->second);
  }
  if (markers.empty()) throw ParseError("missing start marker", line, col);
  if (markers.size() > 1) throw ParseError("more than one start marker", line, col);
  auto it = t.index.find(markers.front());
  if (it == t.index.end() || is_start_node(markers.front())) {
    throw ParseError("start marker points to unknown node '" + markers.front() +
                         "'",
                     line, col);
  }
  t.initial = it->second;
  for (const auto& n : doc.nodes) {
    if (!is_start_node(n.id) &&
        std::count_if(doc.nodes.begin(), doc.nodes.end(),
                      [&](const auto& m) { return m.id == n.id; }) > 1) {
      throw ParseError("node '" + n.id + "' declared twice", n.line, n.column);
    }
  }
  return t;
}

const std::string* label_of(const DotDocument::Edge& e) {
  auto it = e.attrs.find("label");
  return it == e.attrs.end() ? nullptr : &it->second;
}

std::optional<Alphabet> declared(const DotDocument& doc, const char* key,
                                 AlphabetKind kind) {
  auto it = doc.graph_attrs.find(key);
  if (it == doc.graph_attrs.end()) return std::nullopt;
  try {
    return Alphabet(split_list(it->second), kind);
  } catch (const Error& err) {
    throw ParseError(std::string("bad '") + key + "' declaration: " + err.what(),
                     1, 1);
  }
}

/// Appends names in first-appearance order.
void note(std::vector<std::string>& order, std::set<std::string>& seen,
          const std::string& s) {
  if (seen.insert(s).second) order.push_back(s);
}

void check_symbol_text(const std::string& s, std::string_view forbidden,
                       const char* role) {
  for (char c : s) {
    if (forbidden.find(c) != std::string_view::npos ||
        std::isspace(static_cast<unsigned char>(c))) {
      throw SerializeError(std::string(role) + " symbol '" + s +
                           "' contains a reserved delimiter");
    }
  }
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += ',';
    out += parts[k];
  }
  return out;
}

}  // namespace

DotDocument parse_dot(std::string_view text) { return Parser(text).parse(); }

MealyMachine parse_mealy(std::string_view text) {
  const DotDocument doc = parse_dot(text);
  StateTable states = collect_states(doc);

  struct Label {
    std::string input;
    std::vector<std::string> outputs;
  };
  std::vector<Label> labels;
  std::vector<std::string> in_order, out_order;
  std::set<std::string> in_seen, out_seen;
  for (const auto& e : doc.edges) {
    if (is_start_node(e.src)) continue;
    const std::string* label = label_of(e);
    if (!label) throw ParseError("edge without label", e.line, e.column);
    auto slash = label->find('/');
    if (slash == std::string::npos) {
      throw ParseError("malformed Mealy label '" + *label + "'", e.line,
                       e.column);
    }
    Label l{trim(std::string_view(*label).substr(0, slash)),
            split_list(std::string_view(*label).substr(slash + 1))};
    if (l.input.empty()) {
      throw ParseError("empty input in label '" + *label + "'", e.line, e.column);
    }
    for (const auto& o : l.outputs) {
      if (o.empty()) {
        throw ParseError("empty output in label '" + *label + "'", e.line,
                         e.column);
      }
      note(out_order, out_seen, o);
    }
    note(in_order, in_seen, l.input);
    labels.push_back(std::move(l));
  }

  auto inputs = declared(doc, "inputs", AlphabetKind::input)
                    .value_or(Alphabet(in_order, AlphabetKind::input));
  auto outputs = declared(doc, "outputs", AlphabetKind::output)
                     .value_or(Alphabet(out_order, AlphabetKind::output));
  IoAlphabet io;
  try {
    io = IoAlphabet(inputs, outputs);
  } catch (const AlphabetMismatch& err) {
    throw ParseError(err.what(), 1, 1);
  }

  MealyBuilder b(io);
  for (std::size_t k = 0; k < states.names.size(); ++k) b.add_state();
  b.set_initial(states.initial);
  std::size_t k = 0;
  for (const auto& e : doc.edges) {
    if (is_start_node(e.src)) continue;
    const Label& l = labels[k++];
    auto in = io.inputs().find(l.input);
    if (!in) {
      throw ParseError("input '" + l.input + "' not declared", e.line, e.column);
    }
    Word out;
    for (const auto& o : l.outputs) {
      auto s = io.outputs().find(o);
      if (!s) throw ParseError("output '" + o + "' not declared", e.line, e.column);
      out.push_back(*s);
    }
    StateId from = states.index.at(e.src);
    try {
      b.add_transition(from, *in, std::move(out), states.index.at(e.dst));
    } catch (const NondeterminismError&) {
      throw ParseError("nondeterministic: state '" + e.src +
                           "' has two edges on input '" + l.input + "'",
                       e.line, e.column);
    }
  }
  return std::move(b).build();
}

ParsedDfa parse_dfa_document(std::string_view text) {
  const DotDocument doc = parse_dot(text);
  StateTable states = collect_states(doc);

  std::vector<std::string> order;
  std::set<std::string> seen;
  for (const auto& e : doc.edges) {
    if (is_start_node(e.src)) continue;
    const std::string* label = label_of(e);
    if (!label) throw ParseError("edge without label", e.line, e.column);
    std::string sym = trim(*label);
    if (sym.empty()) throw ParseError("empty edge label", e.line, e.column);
    note(order, seen, sym);
  }

  std::optional<IoAlphabet> io;
  Alphabet sigma;
  auto ins = declared(doc, "inputs", AlphabetKind::input);
  auto outs = declared(doc, "outputs", AlphabetKind::output);
  if (ins && outs) {
    try {
      io = IoAlphabet(*ins, *outs);
    } catch (const AlphabetMismatch& err) {
      throw ParseError(err.what(), 1, 1);
    }
    sigma = io->combined();
  } else if (auto decl = declared(doc, "alphabet", AlphabetKind::mixed)) {
    sigma = *decl;
  } else {
    sigma = Alphabet(order);
  }

  std::set<std::string> finals;
  for (const auto& n : doc.nodes) {
    auto shape = n.attrs.find("shape");
    auto acc = n.attrs.find("accepting");
    if ((shape != n.attrs.end() && shape->second == "doublecircle") ||
        (acc != n.attrs.end() && acc->second == "true")) {
      finals.insert(n.id);
    }
  }

  DfaBuilder b(sigma);
  for (const auto& name : states.names) b.add_state(finals.count(name) > 0);
  b.set_initial(states.initial);
  for (const auto& e : doc.edges) {
    if (is_start_node(e.src)) continue;
    std::string sym = trim(*label_of(e));
    auto s = sigma.find(sym);
    if (!s) throw ParseError("symbol '" + sym + "' not declared", e.line, e.column);
    try {
      b.add_transition(states.index.at(e.src), *s, states.index.at(e.dst));
    } catch (const NondeterminismError&) {
      throw ParseError("nondeterministic: state '" + e.src +
                           "' has two edges on '" + sym + "'",
                       e.line, e.column);
    }
  }
  return {std::move(b).build(), std::move(io)};
}

Dfa parse_dfa(std::string_view text) { return parse_dfa_document(text).dfa; }

std::string serialize(const MealyMachine& m) {
  for (const auto& s : m.inputs().names()) check_symbol_text(s, "/,\"", "input");
  for (const auto& s : m.outputs().names()) check_symbol_text(s, "/,\"", "output");
  std::ostringstream out;
  out << "digraph g {\n";
  out << "  graph [inputs=\"" << join(m.inputs().names()) << "\", outputs=\""
      << join(m.outputs().names()) << "\"];\n";
  for (StateId q = 0; q < m.num_states(); ++q) {
    out << "  s" << q << " [shape=circle];\n";
  }
  out << "  __start0 [shape=none,label=\"\"];\n";
  out << "  __start0 -> s" << m.initial() << ";\n";
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (Symbol i : m.inputs().symbols()) {
      if (!m.defined(q, i)) continue;
      out << "  s" << q << " -> s" << m.next(q, i) << " [label=\""
          << m.inputs().text(i) << '/';
      const Word& w = m.output(q, i);
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) out << ',';
        out << m.outputs().text(w[k]);
      }
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

namespace {

std::string serialize_dfa(const Dfa& a, const std::string& decl) {
  std::ostringstream out;
  out << "digraph g {\n";
  out << "  graph [" << decl << "];\n";
  for (StateId q = 0; q < a.num_states(); ++q) {
    out << "  s" << q << (a.is_final(q) ? " [shape=doublecircle];\n"
                                        : " [shape=circle];\n");
  }
  out << "  __start0 [shape=none,label=\"\"];\n";
  out << "  __start0 -> s" << a.initial() << ";\n";
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (Symbol s : a.alphabet().symbols()) {
      if (auto t = a.successor(q, s)) {
        out << "  s" << q << " -> s" << *t << " [label=\""
            << a.alphabet().text(s) << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string serialize(const Dfa& a) {
  for (const auto& s : a.alphabet().names()) check_symbol_text(s, ",\"", "DFA");
  return serialize_dfa(a, "alphabet=\"" + join(a.alphabet().names()) + "\"");
}

std::string serialize(const SpecDfa& s) {
  for (const auto& n : s.dfa().alphabet().names()) check_symbol_text(n, ",\"", "DFA");
  return serialize_dfa(s.dfa(), "inputs=\"" + join(s.io().inputs().names()) +
                                    "\", outputs=\"" +
                                    join(s.io().outputs().names()) + "\"");
}

SpecDfa spec_from_dot(std::string_view text, const IoAlphabet& io,
                      SpecFormat format, std::string name) {
  Dfa raw = parse_dfa(text);
  switch (format) {
    case SpecFormat::plain:
      return validate_spec(raw.over(io.combined()), io, std::move(name));
    case SpecFormat::bug_automaton:
      return bug_automaton_to_spec(raw.over(io.combined()), io, std::move(name));
    case SpecFormat::split_io:
      return split_io_dfa(raw, io, std::move(name));
  }
  throw PreconditionError("unknown spec format");
}

}  // namespace bbckit
