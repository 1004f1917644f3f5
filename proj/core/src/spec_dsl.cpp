#include "contractcase/spec_dsl.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "text_util.hpp"

namespace contractcase {

Result<SourceText> read_source(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return make_error("E001", "cannot read file " + path.string());
  std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return SourceText{path.string(), std::move(content)};
}

namespace {

enum class Tok { ident, string, lbrace, rbrace, lbracket, rbracket, comma, dot, arrow, eof, invalid };

struct Token {
  Tok kind = Tok::eof;
  std::string text;  // identifier or decoded string
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  Lexer(std::string_view input, std::string file, Diagnostics& diagnostics)
      : input_(input), file_(std::move(file)), diagnostics_(diagnostics) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    for (;;) {
      skip_space_and_comments();
      Token t = next();
      const bool done = t.kind == Tok::eof;
      if (t.kind != Tok::invalid) tokens.push_back(std::move(t));
      if (done) break;
    }
    return tokens;
  }

 private:
  bool at_end() const { return pos_ >= input_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < input_.size() ? input_[pos_ + ahead] : '\0'; }

  void advance() {
    if (input_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void error(const char* code, std::string message, std::size_t line, std::size_t column) {
    diagnostics_.push_back(make_error(code, std::move(message), {file_, line, column}));
  }

  Token next() {
    Token t;
    t.line = line_;
    t.column = column_;
    if (at_end()) return t;

    const char c = peek();
    auto single = [&](Tok kind) {
      advance();
      t.kind = kind;
      return t;
    };
    switch (c) {
      case '{':
        return single(Tok::lbrace);
      case '}':
        return single(Tok::rbrace);
      case '[':
        return single(Tok::lbracket);
      case ']':
        return single(Tok::rbracket);
      case ',':
        return single(Tok::comma);
      case '.':
        return single(Tok::dot);
      case '"':
        return string_literal(t);
      default:
        break;
    }
    if (c == '-' && peek(1) == '>') {
      advance();
      advance();
      t.kind = Tok::arrow;
      return t;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      while (!at_end()) {
        const char d = peek();
        if ((d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || (d >= '0' && d <= '9') || d == '_') {
          t.text += d;
          advance();
        } else {
          break;
        }
      }
      t.kind = Tok::ident;
      return t;
    }

    // Skip a whole UTF-8 sequence so the message shows the character.
    std::string bad(1, c);
    advance();
    while (!at_end() && (static_cast<unsigned char>(peek()) & 0xC0) == 0x80) {
      bad += peek();
      advance();
    }
    error("E103", "unexpected character '" + bad + "'", t.line, t.column);
    t.kind = Tok::invalid;
    return t;
  }

  Token string_literal(Token t) {
    advance();  // opening quote
    t.kind = Tok::string;
    while (!at_end()) {
      const char c = peek();
      if (c == '"') {
        advance();
        return t;
      }
      if (c == '\n') break;
      if (c == '\\') {
        const auto line = line_;
        const auto column = column_;
        advance();
        if (at_end()) break;
        const char e = peek();
        advance();
        switch (e) {
          case '"':
            t.text += '"';
            break;
          case '\\':
            t.text += '\\';
            break;
          case 'n':
            t.text += '\n';
            break;
          case 't':
            t.text += '\t';
            break;
          case 'r':
            t.text += '\r';
            break;
          default:
            error("E107", std::string("invalid escape sequence '\\") + e + "'", line, column);
        }
        continue;
      }
      t.text += c;
      advance();
    }
    error("E102", "unterminated string literal", t.line, t.column);
    return t;
  }

  std::string_view input_;
  std::string file_;
  Diagnostics& diagnostics_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::ident:
      return "'" + t.text + "'";
    case Tok::string:
      return "string literal";
    case Tok::lbrace:
      return "'{'";
    case Tok::rbrace:
      return "'}'";
    case Tok::lbracket:
      return "'['";
    case Tok::rbracket:
      return "']'";
    case Tok::comma:
      return "','";
    case Tok::dot:
      return "'.'";
    case Tok::arrow:
      return "'->'";
    case Tok::eof:
      return "end of file";
    case Tok::invalid:
      break;
  }
  return "invalid token";
}

// Thrown inside a declaration to abandon it; the caller resynchronizes.
struct SyntaxError {};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file, Diagnostics& diagnostics)
      : tokens_(std::move(tokens)), file_(std::move(file)), diagnostics_(diagnostics) {}

  void run() {
    while (!at(Tok::eof)) {
      if (keyword("component")) {
        component();
      } else if (keyword("refinement")) {
        refinement();
      } else {
        error("E100", "expected 'component' or 'refinement', found " + describe(current()));
        advance();
        while (!at(Tok::eof) && !keyword("component") && !keyword("refinement")) advance();
      }
    }
  }

  std::vector<ComponentDecl> components;
  std::vector<Refinement> refinements;
  SourceMap locations;

 private:
  const Token& current() const { return tokens_[pos_]; }
  bool at(Tok kind) const { return current().kind == kind; }
  bool keyword(std::string_view word) const { return at(Tok::ident) && current().text == word; }
  void advance() {
    if (!at(Tok::eof)) ++pos_;
  }
  SourceLocation here() const { return {file_, current().line, current().column}; }

  void error(const char* code, std::string message) { error_at(code, std::move(message), here()); }
  void error_at(const char* code, std::string message, SourceLocation location) {
    diagnostics_.push_back(make_error(code, std::move(message), std::move(location)));
  }

  [[noreturn]] void fail(const char* code, std::string message) {
    error(code, std::move(message));
    throw SyntaxError{};
  }

  void expect(Tok kind, const char* what) {
    if (!at(kind)) fail(kind == Tok::lbrace ? "E105" : "E100", std::string("expected ") + what + ", found " + describe(current()));
    advance();
  }

  std::string identifier(const char* what) {
    if (!at(Tok::ident)) fail("E104", std::string("expected ") + what + ", found " + describe(current()));
    auto text = current().text;
    advance();
    return text;
  }

  std::string string_literal(const char* what) {
    if (!at(Tok::string)) fail("E108", std::string("expected ") + what + " string, found " + describe(current()));
    auto text = current().text;
    advance();
    return text;
  }

  QualifiedId qualified_id(const char* what) {
    QualifiedId id;
    id.component = identifier(what);
    if (!at(Tok::dot)) fail("E109", std::string("expected '.' in qualified ") + what + ", found " + describe(current()));
    advance();
    id.local = identifier(what);
    return id;
  }

  bool at_member_start() const { return keyword("assumption") || keyword("contract") || at(Tok::rbrace); }
  bool at_block_start() const { return keyword("component") || keyword("refinement"); }

  // Skips to the next member of the current block. Returns false when the
  // block ends without its '}' (a new top-level block or end of file).
  bool sync_member(std::initializer_list<std::string_view> members) {
    for (;;) {
      if (at(Tok::rbrace) || at(Tok::eof) || at_block_start()) return !at(Tok::eof) && !at_block_start();
      for (auto m : members)
        if (keyword(m)) return true;
      advance();
    }
  }

  void unclosed(const SourceLocation& brace, const std::string& what) {
    error_at("E101", "unclosed '{' of " + what, brace);
  }

  void component() {
    ComponentDecl decl;
    SourceLocation brace;
    const auto start = here();
    advance();  // 'component'
    try {
      decl.name = identifier("component name");
      if (at(Tok::string)) decl.description = string_literal("description");
      if (keyword("parent")) {
        advance();
        decl.parent = identifier("parent component name");
      }
      brace = here();
      expect(Tok::lbrace, "'{'");
    } catch (const SyntaxError&) {
      while (!at(Tok::eof) && !at_block_start() && !at(Tok::lbrace)) advance();
      if (!at(Tok::lbrace)) return;
      brace = here();
      advance();
    }
    locations.set(decl.name, start);

    for (;;) {
      if (at(Tok::rbrace)) {
        advance();
        break;
      }
      if (at(Tok::eof) || at_block_start()) {
        unclosed(brace, "component " + decl.name);
        break;
      }
      const auto member_start = pos_;
      try {
        if (keyword("assumption")) {
          assumption(decl);
        } else if (keyword("contract")) {
          contract(decl);
        } else {
          fail("E100", "expected 'assumption', 'contract' or '}', found " + describe(current()));
        }
      } catch (const SyntaxError&) {
        if (pos_ == member_start) advance();
        if (!sync_member({"assumption", "contract"})) {
          unclosed(brace, "component " + decl.name);
          break;
        }
      }
    }
    components.push_back(std::move(decl));
  }

  void assumption(ComponentDecl& decl) {
    const auto start = here();
    advance();
    Assumption a;
    a.id = identifier("assumption id");
    a.statement = string_literal("assumption statement");
    if (keyword("environmental")) {
      a.environmental = true;
      advance();
    }
    locations.set(decl.name + "." + a.id, start);
    decl.assumptions.push_back(std::move(a));
  }

  void contract(ComponentDecl& decl) {
    const auto start = here();
    advance();
    Contract k;
    k.id = identifier("contract id");
    k.guarantee_statement = string_literal("guarantee statement");
    bool has_assumes = false;
    for (;;) {
      const auto clause = here();
      auto once = [&](bool seen, const char* name) {
        if (seen) error_at("E106", std::string("duplicate '") + name + "' clause on contract " + k.id, clause);
      };
      if (keyword("assumes")) {
        once(has_assumes, "assumes");
        has_assumes = true;
        advance();
        expect(Tok::lbracket, "'['");
        k.assumes.clear();
        k.assumes.push_back(identifier("assumption id"));
        while (at(Tok::comma)) {
          advance();
          k.assumes.push_back(identifier("assumption id"));
        }
        expect(Tok::rbracket, "']'");
      } else if (keyword("inherits")) {
        once(k.inherits.has_value(), "inherits");
        advance();
        k.inherits = qualified_id("contract reference");
      } else if (keyword("uncertainty")) {
        once(k.uncertainty_note.has_value(), "uncertainty");
        advance();
        k.uncertainty_note = string_literal("uncertainty note");
      } else {
        break;
      }
    }
    locations.set(decl.name + "." + k.id, start);
    decl.contracts.push_back(std::move(k));
  }

  void refinement() {
    Refinement r;
    const auto start = here();
    SourceLocation brace;
    advance();
    try {
      r.id = identifier("refinement id");
      if (!keyword("allocated")) fail("E100", "expected 'allocated', found " + describe(current()));
      advance();
      r.allocated_to = identifier("component name");
      brace = here();
      expect(Tok::lbrace, "'{'");
    } catch (const SyntaxError&) {
      while (!at(Tok::eof) && !at_block_start() && !at(Tok::lbrace)) advance();
      if (!at(Tok::lbrace)) return;
      brace = here();
      advance();
    }
    locations.set(SourceMap::refinement_key(r.id), start);

    for (;;) {
      if (at(Tok::rbrace)) {
        advance();
        break;
      }
      if (at(Tok::eof) || at_block_start()) {
        unclosed(brace, "refinement " + r.id);
        break;
      }
      const auto member_start = pos_;
      try {
        if (!keyword("bind")) fail("E100", "expected 'bind' or '}', found " + describe(current()));
        const auto bind_at = here();
        advance();
        Binding b;
        b.source = qualified_id("contract reference");
        expect(Tok::arrow, "'->'");
        b.target = qualified_id("assumption reference");
        locations.set(SourceMap::binding_key(r.id, r.bindings.size()), bind_at);
        r.bindings.push_back(std::move(b));
      } catch (const SyntaxError&) {
        if (pos_ == member_start) advance();
        if (!sync_member({"bind"})) {
          unclosed(brace, "refinement " + r.id);
          break;
        }
      }
    }
    refinements.push_back(std::move(r));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string file_;
  Diagnostics& diagnostics_;
};

void write_string(std::ostream& os, std::string_view text) {
  os << '"';
  for (const char c : text) {
    switch (c) {
      case '"':
        os << "\\\"";
        break;
      case '\\':
        os << "\\\\";
        break;
      case '\n':
        os << "\\n";
        break;
      case '\t':
        os << "\\t";
        break;
      case '\r':
        os << "\\r";
        break;
      default:
        os << c;
    }
  }
  os << '"';
}

}  // namespace

Result<SpecificationStructure> parse_spec(const SourceText& source, const ParseOptions& options) {
  std::size_t bad = 0;
  if (!detail::is_valid_utf8(source.content, &bad))
    return make_error("E000", "input is not valid UTF-8 (byte offset " + std::to_string(bad) + ")", {source.path, 0, 0});

  Diagnostics diagnostics;
  auto tokens = Lexer(source.content, source.path, diagnostics).run();
  Parser parser(std::move(tokens), source.path, diagnostics);
  parser.run();
  if (!diagnostics.empty()) {
    sort_and_dedupe(diagnostics);
    return diagnostics;
  }

  if (options.coarse) {
    for (auto& component : parser.components) {
      std::vector<std::string> all;
      for (const auto& a : component.assumptions) all.push_back(a.id);
      for (auto& contract : component.contracts) contract.assumes = all;
    }
  }
  return build_structure(std::move(parser.components), std::move(parser.refinements), std::move(parser.locations));
}

std::string serialize_spec(const SpecificationStructure& structure) {
  std::ostringstream os;
  bool first = true;
  auto separate = [&] {
    if (!first) os << '\n';
    first = false;
  };

  for (const auto& c : structure.components()) {
    separate();
    os << "component " << c.name;
    if (!c.description.empty()) {
      os << ' ';
      write_string(os, c.description);
    }
    if (c.parent) os << " parent " << *c.parent;
    os << " {\n";
    for (const auto& a : c.assumptions) {
      os << "  assumption " << a.id << ' ';
      write_string(os, a.statement);
      if (a.environmental) os << " environmental";
      os << '\n';
    }
    for (const auto& k : c.contracts) {
      os << "  contract " << k.id << ' ';
      write_string(os, k.guarantee_statement);
      if (!k.assumes.empty()) os << " assumes [" << detail::join(k.assumes, ", ") << ']';
      if (k.inherits) os << " inherits " << k.inherits->str();
      if (k.uncertainty_note) {
        os << " uncertainty ";
        write_string(os, *k.uncertainty_note);
      }
      os << '\n';
    }
    os << "}\n";
  }

  for (const auto& r : structure.refinements()) {
    separate();
    os << "refinement " << r.id << " allocated " << r.allocated_to << " {\n";
    for (const auto& b : r.bindings) os << "  bind " << b.source.str() << " -> " << b.target.str() << '\n';
    os << "}\n";
  }
  return os.str();
}

}  // namespace contractcase
