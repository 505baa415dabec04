#include "adhoc/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "adhoc/models.hpp"

namespace adhoc::frontend {

namespace {

// ---------------------------------------------------------------------------
// Tokens

enum class Tok { Name, Number, String, Op, Newline, Indent, Dedent, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long long number = 0;
  bool is_float = false;
  int line = 1;
  int column = 1;
  int end_line = 1;
  int end_column = 2;
};

const std::set<std::string, std::less<>> kKeywords = {
    "False", "None",   "True",  "and",      "as",       "assert", "async", "await",  "break",
    "class", "continue", "def", "del",      "elif",     "else",   "except", "finally", "for",
    "from",  "global", "if",    "import",   "in",       "is",     "lambda", "nonlocal", "not",
    "or",    "pass",   "raise", "return",   "try",      "while",  "with",  "yield"};

bool is_keyword(std::string_view word) { return kKeywords.count(word) != 0; }

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    indents_.push_back(0);
    bool at_line_start = true;
    while (pos_ < text_.size()) {
      if (at_line_start && depth_ == 0) {
        if (!indentation()) continue;
        at_line_start = false;
      }
      char c = text_[pos_];
      if (c == '\n') {
        if (depth_ == 0) push(Tok::Newline, "\n", line_, column_, line_, column_ + 1);
        advance();
        at_line_start = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\f' || c == '\r') {
        advance();
        continue;
      }
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      if (c == '\\' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
        advance();
        advance();
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        if ((c == 'r' || c == 'R') && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '\'' || text_[pos_ + 1] == '"')) {
          string_literal(true);
          continue;
        }
        if (pos_ + 1 < text_.size() && (text_[pos_ + 1] == '\'' || text_[pos_ + 1] == '"') &&
            std::string_view("bBfFuU").find(c) != std::string_view::npos)
          fail("string prefix '" + std::string(1, c) + "' is not supported");
        name();
        continue;
      }
      if (static_cast<unsigned char>(c) >= 0x80) fail("non-ASCII identifiers are not supported");
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        number();
        continue;
      }
      if (c == '\'' || c == '"') {
        string_literal(false);
        continue;
      }
      op();
    }
    if (!tokens_.empty() && tokens_.back().kind != Tok::Newline && tokens_.back().kind != Tok::Dedent &&
        tokens_.back().kind != Tok::Indent)
      push(Tok::Newline, "\n", line_, column_, line_, column_ + 1);
    if (depth_ > 0) fail("unexpected end of file inside brackets");
    while (indents_.size() > 1) {
      indents_.pop_back();
      push(Tok::Dedent, "", line_, column_, line_, column_ + 1);
    }
    push(Tok::End, "", line_, column_, line_, column_ + 1);
    return std::move(tokens_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(Provenance{file_, line_, column_, 1}, message);
  }

  void push(Tok kind, std::string text, int line, int column, int end_line, int end_column) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.line = line;
    t.column = column;
    t.end_line = end_line;
    t.end_column = end_column;
    tokens_.push_back(std::move(t));
  }

  void advance() {
    unsigned char c = static_cast<unsigned char>(text_[pos_]);
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++column_;
    }
    ++pos_;
  }

  // Measures the indentation of a logical line. Returns false for blank and
  // comment-only lines, which are consumed.
  bool indentation() {
    int width = 0;
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\f')) {
      width = text_[pos_] == '\t' ? (width / 8 + 1) * 8 : width + 1;
      advance();
    }
    if (pos_ < text_.size() && text_[pos_] == '\r') advance();
    if (pos_ >= text_.size()) return false;
    if (text_[pos_] == '\n' || text_[pos_] == '#') {
      while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      if (pos_ < text_.size()) advance();
      return false;
    }
    if (width > indents_.back()) {
      indents_.push_back(width);
      push(Tok::Indent, "", line_, 1, line_, column_);
    } else {
      while (width < indents_.back()) {
        indents_.pop_back();
        push(Tok::Dedent, "", line_, column_, line_, column_ + 1);
      }
      if (width != indents_.back()) fail("inconsistent dedent");
    }
    return true;
  }

  void name() {
    int line = line_, column = column_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      advance();
    push(Tok::Name, std::string(text_.substr(start, pos_ - start)), line, column, line_, column_);
  }

  void number() {
    int line = line_, column = column_;
    std::size_t start = pos_;
    bool is_float = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        if (c == 'e' || c == 'E' || c == 'j' || c == 'J') is_float = true;
        if ((c == 'e' || c == 'E') && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '+' || text_[pos_ + 1] == '-'))
          advance();
        advance();
      } else if (c == '.') {
        is_float = true;
        advance();
      } else {
        break;
      }
    }
    std::string raw(text_.substr(start, pos_ - start));
    push(Tok::Number, raw, line, column, line_, column_);
    Token& t = tokens_.back();
    t.is_float = is_float;
    if (!is_float) {
      std::string digits;
      for (char c : raw)
        if (c != '_') digits.push_back(c);
      bool decimal = std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
      if (!decimal) {
        // Hex, octal and binary literals only ever feed opaque arithmetic.
        t.is_float = true;
      } else if (digits.size() > 18) {
        throw SyntaxError(Provenance{file_, line, column, static_cast<int>(raw.size())}, "integer literal too large");
      } else {
        t.number = std::stoll(digits);
      }
    }
  }

  void string_literal(bool raw) {
    int line = line_, column = column_;
    if (raw) advance();
    char quote = text_[pos_];
    bool triple = text_.substr(pos_, 3) == std::string(3, quote);
    for (int i = 0; i < (triple ? 3 : 1); ++i) advance();
    std::string value;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string literal");
      char c = text_[pos_];
      if (!triple && c == '\n') fail("unterminated string literal");
      if (c == quote) {
        if (!triple) {
          advance();
          break;
        }
        if (text_.substr(pos_, 3) == std::string(3, quote)) {
          for (int i = 0; i < 3; ++i) advance();
          break;
        }
      }
      if (c == '\\' && pos_ + 1 < text_.size()) {
        advance();
        char e = text_[pos_];
        if (raw) {
          value.push_back('\\');
          value.push_back(e);
          advance();
          continue;
        }
        advance();
        switch (e) {
          case '\n': break;
          case '\\': value.push_back('\\'); break;
          case '\'': value.push_back('\''); break;
          case '"': value.push_back('"'); break;
          case 'a': value.push_back('\a'); break;
          case 'b': value.push_back('\b'); break;
          case 'f': value.push_back('\f'); break;
          case 'n': value.push_back('\n'); break;
          case 'r': value.push_back('\r'); break;
          case 't': value.push_back('\t'); break;
          case 'v': value.push_back('\v'); break;
          case 'x': {
            if (pos_ + 2 > text_.size() || !std::isxdigit(static_cast<unsigned char>(text_[pos_])) ||
                !std::isxdigit(static_cast<unsigned char>(text_[pos_ + 1])))
              fail("truncated \\x escape");
            value.push_back(static_cast<char>(std::stoi(std::string(text_.substr(pos_, 2)), nullptr, 16)));
            advance();
            advance();
            break;
          }
          default:
            value.push_back('\\');
            value.push_back(e);
        }
        continue;
      }
      value.push_back(c);
      advance();
    }
    push(Tok::String, value, line, column, line_, column_);
  }

  void op() {
    static const char* const kOps[] = {"**=", "//=", ">>=", "<<=", "...", "->", ":=", "==", "!=", "<=", ">=",
                                       "**",  "//",  "<<",  ">>",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=",
                                       "^=",  "@=",  "(",   ")",   "[",   "]",  "{",  "}",  ",",  ":",  ".",
                                       ";",   "+",   "-",   "*",   "/",   "%",  "&",  "|",  "^",  "~",  "<",
                                       ">",   "=",   "@"};
    for (const char* candidate : kOps) {
      std::string_view o(candidate);
      if (text_.substr(pos_, o.size()) != o) continue;
      int line = line_, column = column_;
      for (std::size_t i = 0; i < o.size(); ++i) advance();
      if (o == "(" || o == "[" || o == "{") ++depth_;
      if ((o == ")" || o == "]" || o == "}") && depth_ > 0) --depth_;
      push(Tok::Op, std::string(o), line, column, line_, column_);
      return;
    }
    fail(std::string("unexpected character '") + text_[pos_] + "'");
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  int depth_ = 0;
  std::vector<int> indents_;
  std::vector<Token> tokens_;
};

// ---------------------------------------------------------------------------
// Parser

// Raised inside a statement for host syntax outside the subset; the parser
// records it and skips to the end of the statement.
struct Unsupported {
  Diagnostic diagnostic;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file) : toks_(std::move(tokens)), file_(std::move(file)) {}

  SubjectAST run() {
    SubjectAST ast;
    ast.file = file_;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Newline) {
        next();
        continue;
      }
      if (peek().kind == Tok::Indent) throw SyntaxError(where(peek()), "unexpected indent");
      if (is_name("def")) {
        if (auto def = guarded_def()) ast.items.push_back(std::move(*def));
        continue;
      }
      statement(ast.top_level);
    }
    for (const auto& item : ast.items)
      for (const auto& s : item.body) check_calls(s);
    for (const auto& s : ast.top_level) check_calls(s);
    if (!unsupported_.empty()) throw UnsupportedConstruct(std::move(unsupported_));
    return ast;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_op(std::string_view o) const { return peek().kind == Tok::Op && peek().text == o; }
  bool is_name(std::string_view n) const { return peek().kind == Tok::Name && peek().text == n; }

  Provenance where(const Token& t) const { return span(t, t); }
  Provenance span(const Token& first, const Token& last) const {
    int length = first.line == last.end_line ? last.end_column - first.column : 1;
    return Provenance{file_, first.line, first.column, std::max(1, length)};
  }
  Provenance span_from(std::size_t first) const { return span(toks_[first], toks_[pos_ == 0 ? 0 : pos_ - 1]); }

  [[noreturn]] void syntax(const std::string& message) const { throw SyntaxError(where(peek()), message); }
  [[noreturn]] void unsupported(const Provenance& at, const std::string& message) const {
    throw Unsupported{Diagnostic{DiagKind::Unsupported, at, message}};
  }

  void expect_op(std::string_view o) {
    if (!is_op(o)) syntax("expected '" + std::string(o) + "'");
    next();
  }
  std::string expect_name() {
    if (peek().kind != Tok::Name || is_keyword(peek().text)) syntax("expected a name");
    return next().text;
  }
  void expect_newline() {
    if (peek().kind != Tok::Newline && peek().kind != Tok::End) syntax("expected end of line");
    if (peek().kind == Tok::Newline) next();
  }

  // Skips the remainder of the current statement, including an indented block.
  void skip_statement() {
    while (peek().kind != Tok::Newline && peek().kind != Tok::End) next();
    if (peek().kind == Tok::Newline) next();
    if (peek().kind == Tok::Indent) skip_block();
  }
  void skip_block() {
    int depth = 0;
    do {
      if (peek().kind == Tok::Indent) ++depth;
      if (peek().kind == Tok::Dedent) --depth;
      if (peek().kind == Tok::End) return;
      next();
    } while (depth > 0);
  }

  std::optional<FunctionDef> guarded_def() {
    std::size_t start = pos_;
    try {
      return def();
    } catch (const Unsupported& u) {
      unsupported_.push_back(u.diagnostic);
      pos_ = start;
      skip_statement();
      return std::nullopt;
    }
  }

  FunctionDef def() {
    FunctionDef f;
    const Token& kw = next();
    f.name = expect_name();
    f.where = span(kw, toks_[pos_ - 1]);
    expect_op("(");
    std::vector<std::string> params;
    while (!is_op(")")) {
      if (is_op("*") || is_op("**") || is_op("/")) unsupported(where(peek()), "variadic parameters are not supported");
      params.push_back(expect_name());
      if (is_op(":")) {
        next();
        expression();
      }
      if (is_op("=")) unsupported(where(peek()), "default parameter values are not supported");
      if (!is_op(",")) break;
      next();
    }
    expect_op(")");
    if (is_op("->")) {
      next();
      expression();
    }
    expect_op(":");
    if (params.size() != 1)
      unsupported(f.where, "parser '" + f.name + "' must take exactly one string parameter, not " +
                               std::to_string(params.size()));
    f.param = params.front();
    if (peek().kind == Tok::Newline) {
      next();
      if (peek().kind != Tok::Indent) syntax("expected an indented block");
      next();
      while (peek().kind != Tok::Dedent && peek().kind != Tok::End) {
        if (is_name("def") || is_name("class")) {
          Provenance at = where(peek());
          unsupported_.push_back({DiagKind::Unsupported, at, "nested definitions are not supported"});
          skip_statement();
          continue;
        }
        statement(f.body);
      }
      if (peek().kind == Tok::Dedent) next();
    } else {
      simple_statements(f.body);
    }
    return f;
  }

  void statement(std::vector<Stmt>& out) {
    static const std::set<std::string, std::less<>> kCompound = {"if",   "for",   "while", "try",   "with",
                                                                  "class", "async", "elif",  "else",  "except",
                                                                  "finally", "match"};
    if (peek().kind == Tok::Name && kCompound.count(peek().text) &&
        !(peek().text == "match" && peek(1).kind == Tok::Op && peek(1).text != "(")) {
      unsupported_.push_back({DiagKind::Unsupported, where(peek()),
                              "'" + peek().text + "' statements are not supported"});
      skip_statement();
      return;
    }
    if (is_name("def")) {
      unsupported_.push_back({DiagKind::Unsupported, where(peek()), "nested definitions are not supported"});
      skip_statement();
      return;
    }
    simple_statements(out);
  }

  void simple_statements(std::vector<Stmt>& out) {
    while (true) {
      std::size_t start = pos_;
      try {
        small_statement(out);
      } catch (const Unsupported& u) {
        unsupported_.push_back(u.diagnostic);
        pos_ = start;
        while (peek().kind != Tok::Newline && peek().kind != Tok::End && !is_op(";")) next();
      }
      if (is_op(";")) {
        next();
        if (peek().kind == Tok::Newline || peek().kind == Tok::End) break;
        continue;
      }
      break;
    }
    expect_newline();
  }

  void small_statement(std::vector<Stmt>& out) {
    std::size_t start = pos_;
    Stmt s;
    if (is_name("pass")) {
      next();
      s.kind = Stmt::Kind::Pass;
      s.where = span_from(start);
      out.push_back(std::move(s));
      return;
    }
    if (is_name("import") || is_name("from")) {
      // Imports carry no parsing behaviour; calls through them are checked.
      while (peek().kind != Tok::Newline && peek().kind != Tok::End && !is_op(";")) next();
      return;
    }
    if (is_name("return")) {
      next();
      s.kind = Stmt::Kind::Return;
      if (peek().kind != Tok::Newline && peek().kind != Tok::End && !is_op(";")) s.values.push_back(expression_list());
      s.where = span_from(start);
      out.push_back(std::move(s));
      return;
    }
    if (is_name("assert")) {
      next();
      s.kind = Stmt::Kind::Assert;
      s.values.push_back(expression());
      if (is_op(",")) {
        // The message is evaluated only on failure, so it cannot change acceptance.
        next();
        expression();
      }
      s.where = span_from(start);
      out.push_back(std::move(s));
      return;
    }
    if (peek().kind == Tok::Name && is_keyword(peek().text) && peek().text != "True" && peek().text != "False" &&
        peek().text != "None" && peek().text != "not" && peek().text != "lambda" && peek().text != "await")
      unsupported(where(peek()), "'" + peek().text + "' statements are not supported");

    Expr first = expression_list();
    if (is_op("=")) {
      next();
      Expr value = expression_list();
      if (is_op("=")) unsupported(where(peek()), "chained assignment is not supported");
      s.kind = Stmt::Kind::Assign;
      if (first.kind == Expr::Kind::Name) {
        s.targets.push_back(std::move(first));
      } else if (first.kind == Expr::Kind::List || first.kind == Expr::Kind::Tuple) {
        s.pattern = true;
        for (auto& t : first.children) {
          if (t.kind != Expr::Kind::Name) unsupported(t.where, "only names may appear in a destructuring pattern");
          s.targets.push_back(std::move(t));
        }
        if (s.targets.empty()) unsupported(first.where, "empty destructuring pattern");
      } else {
        unsupported(first.where, "assignment target must be a name or a list of names");
      }
      s.values.push_back(std::move(value));
      s.where = span_from(start);
      out.push_back(std::move(s));
      return;
    }
    if (peek().kind == Tok::Op && peek().text.size() >= 2 && peek().text.back() == '=' && peek().text != "==" &&
        peek().text != "!=" && peek().text != "<=" && peek().text != ">=")
      unsupported(where(peek()), "augmented assignment is not supported");
    if (is_op(":")) unsupported(where(peek()), "annotated assignment is not supported");
    s.kind = Stmt::Kind::Expression;
    s.values.push_back(std::move(first));
    s.where = span_from(start);
    out.push_back(std::move(s));
  }

  // expr (',' expr)* [','] ; a bare comma list is a tuple.
  Expr expression_list() {
    std::size_t start = pos_;
    Expr first = expression();
    if (!is_op(",")) return first;
    Expr tuple;
    tuple.kind = Expr::Kind::Tuple;
    tuple.children.push_back(std::move(first));
    while (is_op(",")) {
      next();
      if (peek().kind == Tok::Newline || peek().kind == Tok::End || is_op("=") || is_op(")") || is_op(";")) break;
      tuple.children.push_back(expression());
    }
    tuple.where = span_from(start);
    return tuple;
  }

  Expr expression() {
    std::size_t start = pos_;
    if (is_name("lambda")) unsupported(where(peek()), "lambda expressions are not supported");
    if (is_name("not")) unsupported(where(peek()), "boolean operators are not supported");
    if (is_name("await") || is_name("yield")) unsupported(where(peek()), "'" + peek().text + "' is not supported");
    Expr e = comparison();
    if (is_name("if")) unsupported(span_from(start), "conditional expressions are not supported");
    if (is_name("and") || is_name("or")) unsupported(where(peek()), "boolean operators are not supported");
    if (is_op(":=")) unsupported(where(peek()), "assignment expressions are not supported");
    return e;
  }

  Expr comparison() {
    std::size_t start = pos_;
    Expr left = arith();
    static const std::set<std::string, std::less<>> kCompare = {"==", "!=", "<", ">", "<=", ">="};
    if (!(peek().kind == Tok::Op && kCompare.count(peek().text)) && !is_name("in") && !is_name("is") &&
        !is_name("not"))
      return left;
    Expr cmp;
    cmp.kind = Expr::Kind::Compare;
    cmp.children.push_back(std::move(left));
    while (true) {
      if (is_name("in") || is_name("is") || is_name("not"))
        unsupported(where(peek()), "'" + peek().text + "' comparisons are not supported");
      if (!(peek().kind == Tok::Op && kCompare.count(peek().text))) break;
      if (!cmp.text.empty()) cmp.text += " ";
      cmp.text += next().text;
      cmp.children.push_back(arith());
    }
    cmp.where = span_from(start);
    return cmp;
  }

  Expr binary(std::size_t start, std::string op, Expr left, Expr right) {
    Expr e;
    e.kind = Expr::Kind::BinOp;
    e.text = std::move(op);
    e.children.push_back(std::move(left));
    e.children.push_back(std::move(right));
    e.where = span_from(start);
    return e;
  }

  Expr arith() {
    std::size_t start = pos_;
    Expr left = term();
    while (is_op("+") || is_op("-") || is_op("|") || is_op("&") || is_op("^") || is_op("<<") || is_op(">>")) {
      std::string op = next().text;
      left = binary(start, op, std::move(left), term());
    }
    return left;
  }

  Expr term() {
    std::size_t start = pos_;
    Expr left = factor();
    while (is_op("*") || is_op("/") || is_op("//") || is_op("%") || is_op("@")) {
      std::string op = next().text;
      left = binary(start, op, std::move(left), factor());
    }
    return left;
  }

  Expr factor() {
    std::size_t start = pos_;
    if (is_op("-") || is_op("+") || is_op("~")) {
      Expr e;
      e.kind = Expr::Kind::Unary;
      e.text = next().text;
      e.children.push_back(factor());
      e.where = span_from(start);
      return e;
    }
    Expr base = postfix();
    if (is_op("**")) {
      next();
      return binary(start, "**", std::move(base), factor());
    }
    return base;
  }

  Expr postfix() {
    std::size_t start = pos_;
    Expr e = atom();
    while (true) {
      if (is_op("(")) {
        next();
        Expr call;
        call.kind = Expr::Kind::Call;
        call.children.push_back(std::move(e));
        while (!is_op(")")) {
          if (is_op("*") || is_op("**")) unsupported(where(peek()), "argument unpacking is not supported");
          if (peek().kind == Tok::Name && peek(1).kind == Tok::Op && peek(1).text == "=")
            unsupported(where(peek()), "keyword arguments are not supported");
          call.children.push_back(expression());
          if (is_name("for")) unsupported(where(peek()), "generator expressions are not supported");
          if (!is_op(",")) break;
          next();
        }
        expect_op(")");
        call.where = span_from(start);
        e = std::move(call);
      } else if (is_op(".")) {
        next();
        Expr attr;
        attr.kind = Expr::Kind::Attr;
        attr.text = expect_name();
        attr.children.push_back(std::move(e));
        attr.where = span_from(start);
        e = std::move(attr);
      } else if (is_op("[")) {
        next();
        Expr sub;
        sub.kind = Expr::Kind::Subscript;
        sub.children.push_back(std::move(e));
        if (is_op(":")) unsupported(where(peek()), "slices are not supported");
        sub.children.push_back(expression());
        if (is_op(":") || is_op(",")) unsupported(where(peek()), "slices are not supported");
        expect_op("]");
        sub.where = span_from(start);
        e = std::move(sub);
      } else {
        return e;
      }
    }
  }

  Expr atom() {
    std::size_t start = pos_;
    const Token& t = peek();
    Expr e;
    switch (t.kind) {
      case Tok::Name:
        if (is_keyword(t.text)) {
          if (t.text == "True" || t.text == "False" || t.text == "None")
            unsupported(where(t), "'" + t.text + "' has no translation to the parsing IR");
          unsupported(where(t), "'" + t.text + "' is not supported here");
        }
        e.kind = Expr::Kind::Name;
        e.text = next().text;
        break;
      case Tok::Number:
        e.kind = t.is_float ? Expr::Kind::Float : Expr::Kind::Int;
        e.text = t.text;
        e.number = t.number;
        next();
        break;
      case Tok::String:
        e.kind = Expr::Kind::Str;
        while (peek().kind == Tok::String) e.text += next().text;
        break;
      case Tok::Op:
        if (t.text == "(" || t.text == "[") {
          bool list = t.text == "[";
          std::string close = list ? "]" : ")";
          next();
          std::vector<Expr> items;
          bool comma = false;
          while (!is_op(close)) {
            items.push_back(expression());
            if (is_name("for")) unsupported(where(peek()), "comprehensions are not supported");
            if (!is_op(",")) break;
            comma = true;
            next();
          }
          expect_op(close);
          if (!list && items.size() == 1 && !comma) return std::move(items.front());
          e.kind = list ? Expr::Kind::List : Expr::Kind::Tuple;
          e.children = std::move(items);
          break;
        }
        if (t.text == "{") unsupported(where(t), "dict and set displays are not supported");
        syntax("unexpected '" + t.text + "'");
      case Tok::Newline:
      case Tok::End: syntax("unexpected end of line");
      case Tok::Indent: syntax("unexpected indent");
      case Tok::Dedent: syntax("unexpected dedent");
    }
    e.where = span_from(start);
    return e;
  }

  // Every call target must be whitelisted; report each offending span.
  void check_calls(const Stmt& s) {
    for (const auto& e : s.values) check_calls(e);
  }
  void check_calls(const Expr& e) {
    if (e.kind == Expr::Kind::Call) {
      const Expr& callee = e.children.front();
      if (!whitelisted(callee))
        unsupported_.push_back({DiagKind::Unsupported, callee.where,
                                "call to '" + dotted(callee) + "' is not supported by any builtin model"});
      for (std::size_t i = 1; i < e.children.size(); ++i) check_calls(e.children[i]);
      if (callee.kind == Expr::Kind::Attr) check_calls(callee.children.front());
      return;
    }
    for (const auto& c : e.children) check_calls(c);
  }

  static std::string dotted(const Expr& e) {
    if (e.kind == Expr::Kind::Name) return e.text;
    if (e.kind == Expr::Kind::Attr) return dotted(e.children.front()) + "." + e.text;
    if (e.kind == Expr::Kind::Call) return dotted(e.children.front()) + "(...)";
    return "<expression>";
  }

  static bool whitelisted(const Expr& callee) {
    static const std::set<std::string, std::less<>> kNames = {"int", "map", "len", "list", "abs",
                                                              "sum", "min", "max", "round", "pow"};
    if (callee.kind == Expr::Kind::Name) return kNames.count(callee.text) != 0;
    if (callee.kind != Expr::Kind::Attr) return false;
    const Expr& receiver = callee.children.front();
    if (receiver.kind == Expr::Kind::Name && receiver.text == "math") return true;
    if (receiver.kind == Expr::Kind::Name && (receiver.text == "re" || receiver.text == "str")) return false;
    return callee.text == "split" || callee.text == "strip";
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string file_;
  std::vector<Diagnostic> unsupported_;
};

// ---------------------------------------------------------------------------
// Simplification

const std::set<std::string, std::less<>> kOpaqueCalls = {"abs", "sum", "min", "max", "round", "pow"};

struct Val {
  enum class Kind { Operand, Opaque, Func };
  Kind kind = Kind::Opaque;
  ir::Operand op;
  std::optional<ir::Shape> shape;  // Operand: Str/Int for literals, the variable's shape otherwise

  static Val opaque() { return Val{}; }
  static Val operand(ir::Operand op, ir::Shape shape) { return Val{Kind::Operand, std::move(op), shape}; }
  static Val func(std::string builtin) { return Val{Kind::Func, ir::FuncRef{std::move(builtin)}, ir::Shape::Function}; }

  bool is_var() const { return kind == Kind::Operand && std::holds_alternative<ir::Var>(op); }
  bool numeric() const {
    return kind == Kind::Opaque || (kind == Kind::Operand && shape && *shape == ir::Shape::Int);
  }
};

void collect_names(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Name) out.insert(e.text);
  for (const auto& c : e.children) collect_names(c, out);
}

class Lowerer {
 public:
  Lowerer(std::string name, std::string param, const Provenance& where, const std::vector<Stmt>& body)
      : registry_(builtins()), body_(body) {
    program_.name = std::move(name);
    program_.param = std::move(param);
    program_.where = where;
    program_.accept_where = where;
    used_.insert(program_.param);
    used_.insert(program_.name);
    for (const auto& s : body) {
      for (const auto& t : s.targets) collect_names(t, used_);
      for (const auto& v : s.values) collect_names(v, used_);
    }
    env_[program_.param] = Val::operand(ir::Var{program_.param}, ir::Shape::Str);
    bound_.insert(program_.param);
    shapes_[program_.param] = ir::Shape::Str;
  }

  ir::Program run() {
    for (const auto& s : body_) {
      program_.accept_where = s.where;
      if (!statement(s)) break;
    }
    return std::move(program_);
  }

 private:
  // Returns false when control leaves the function.
  bool statement(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Pass: return true;
      case Stmt::Kind::Expression: lower(s.values.front(), std::nullopt); return true;
      case Stmt::Kind::Return:
        if (!s.values.empty()) lower(s.values.front(), std::nullopt);
        return false;
      case Stmt::Kind::Assert: {
        Val v = lower(s.values.front(), std::nullopt);
        if (!v.is_var() || v.shape != ir::Shape::Bool)
          throw UnsupportedConstruct(s.values.front().where, "assert condition has no translation to the parsing IR");
        program_.steps.emplace_back(ir::Assert{std::get<ir::Var>(v.op).name, s.where});
        return true;
      }
      case Stmt::Kind::Assign:
        if (s.pattern)
          destructure(s);
        else
          env_[s.targets.front().text] = lower(s.values.front(), s.targets.front().text);
        return true;
    }
    return true;
  }

  // [a, b, c] = e  ~>  length, equals k, assert, then one index per name.
  void destructure(const Stmt& s) {
    const Expr& value = s.values.front();
    Val list = lower(value, used_.count("xs") ? std::nullopt : std::optional<std::string>("xs"));
    if (!list.is_var() || (list.shape != ir::Shape::StrList && list.shape != ir::Shape::IntList))
      throw UnsupportedConstruct(value.where, "only lists produced by split or map can be destructured");
    const Provenance pattern = pattern_span(s);
    const auto k = static_cast<long long>(s.targets.size());
    std::string n = emit("length", {list.op}, pattern, std::nullopt);
    std::string ok = emit("equals", {ir::IntLit{k}, ir::Var{n}}, pattern, std::nullopt);
    program_.steps.emplace_back(ir::Assert{ok, pattern});
    for (std::size_t i = 0; i < s.targets.size(); ++i) {
      const auto& t = s.targets[i];
      std::string var = emit("index", {list.op, ir::IntLit{static_cast<long long>(i)}}, t.where, t.text);
      env_[t.text] = Val::operand(ir::Var{var}, shapes_.at(var));
    }
  }

  Provenance pattern_span(const Stmt& s) const {
    const auto& first = s.targets.front().where;
    const auto& last = s.targets.back().where;
    Provenance p = first;
    if (first.line == last.line) p.length = last.column + last.length - first.column;
    return p;
  }

  std::string fresh() {
    while (true) {
      std::string name = "v" + std::to_string(++counter_);
      if (!used_.count(name) && !bound_.count(name) && !registry_.find(name)) return name;
    }
  }

  std::string emit(const std::string& builtin, std::vector<ir::Operand> args, const Provenance& where,
                   const std::optional<std::string>& hint) {
    const BuiltinModel* model = registry_.find(builtin);
    std::vector<OperandInfo> infos;
    for (const auto& a : args) {
      OperandInfo info{&a, std::nullopt};
      if (const auto* v = std::get_if<ir::Var>(&a)) info.shape = shapes_.at(v->name);
      infos.push_back(info);
    }
    auto result = model->signature(infos, registry_);
    if (const auto* message = std::get_if<std::string>(&result)) throw UnsupportedConstruct(where, *message);
    std::string var = hint && !bound_.count(*hint) && !registry_.find(*hint) ? *hint : fresh();
    bound_.insert(var);
    shapes_[var] = std::get<ir::Shape>(result);
    ir::Let let;
    let.var = var;
    let.call.builtin = builtin;
    let.call.args = std::move(args);
    let.call.where = where;
    let.where = where;
    program_.steps.emplace_back(std::move(let));
    return var;
  }

  Val var_val(const std::string& name) const { return Val::operand(ir::Var{name}, shapes_.at(name)); }

  Val lower(const Expr& e, const std::optional<std::string>& hint) {
    switch (e.kind) {
      case Expr::Kind::Name: {
        auto it = env_.find(e.text);
        if (it != env_.end()) return it->second;
        if (e.text == "int") return Val::func("int_py");
        throw UnsupportedConstruct(e.where, "'" + e.text + "' is not defined before use");
      }
      case Expr::Kind::Str: return Val::operand(ir::StrLit{e.text}, ir::Shape::Str);
      case Expr::Kind::Int: return Val::operand(ir::IntLit{e.number}, ir::Shape::Int);
      case Expr::Kind::Float: return Val::opaque();
      case Expr::Kind::Unary: {
        Val inner = lower(e.children.front(), std::nullopt);
        if (e.text == "-" && inner.kind == Val::Kind::Operand && std::holds_alternative<ir::IntLit>(inner.op))
          return Val::operand(ir::IntLit{-std::get<ir::IntLit>(inner.op).value}, ir::Shape::Int);
        if (e.text == "+" && inner.kind == Val::Kind::Operand && std::holds_alternative<ir::IntLit>(inner.op))
          return inner;
        require_numeric(inner, e.children.front());
        return Val::opaque();
      }
      case Expr::Kind::BinOp: {
        for (const auto& c : e.children) require_numeric(lower(c, std::nullopt), c);
        return Val::opaque();
      }
      case Expr::Kind::Compare: return compare(e, hint);
      case Expr::Kind::Call: return call(e, hint);
      case Expr::Kind::Attr: {
        const Expr& receiver = e.children.front();
        if (receiver.kind == Expr::Kind::Name && receiver.text == "str" && e.text == "strip" && !env_.count("str"))
          return Val::func("strip_py");
        throw UnsupportedConstruct(e.where, "attribute '" + e.text + "' has no translation to the parsing IR");
      }
      case Expr::Kind::Subscript: {
        Val list = lower(e.children[0], std::nullopt);
        if (!list.is_var() || (list.shape != ir::Shape::StrList && list.shape != ir::Shape::IntList))
          throw UnsupportedConstruct(e.where, "only lists produced by split or map can be indexed");
        Val index = lower(e.children[1], std::nullopt);
        if (index.kind != Val::Kind::Operand || !std::holds_alternative<ir::IntLit>(index.op))
          throw UnsupportedConstruct(e.children[1].where, "list index must be an integer literal");
        if (std::get<ir::IntLit>(index.op).value < 0)
          throw UnsupportedConstruct(e.children[1].where, "negative list indices are not supported");
        return var_val(emit("index", {list.op, index.op}, e.where, hint));
      }
      case Expr::Kind::Tuple:
      case Expr::Kind::List:
        throw UnsupportedConstruct(e.where, "list and tuple values have no translation to the parsing IR");
    }
    throw UnsupportedConstruct(e.where, "expression has no translation to the parsing IR");
  }

  void require_numeric(const Val& v, const Expr& e) const {
    if (!v.numeric())
      throw UnsupportedConstruct(e.where, "arithmetic on strings, lists or functions is not supported");
  }

  Val compare(const Expr& e, const std::optional<std::string>& hint) {
    std::vector<Val> sides;
    for (const auto& c : e.children) sides.push_back(lower(c, std::nullopt));
    for (std::size_t i = 0; i < sides.size(); ++i)
      if (!sides[i].numeric())
        throw UnsupportedConstruct(e.children[i].where, "only integers can be compared");
    if (e.text != "==") return Val::opaque();
    const Val& a = sides[0];
    const Val& b = sides[1];
    if (a.kind != Val::Kind::Operand || b.kind != Val::Kind::Operand) return Val::opaque();
    if (!a.is_var() && !b.is_var()) return Val::opaque();
    // Literal first, as in `equals 3 v2`.
    const Val& first = a.is_var() && !b.is_var() ? b : a;
    const Val& second = a.is_var() && !b.is_var() ? a : b;
    return var_val(emit("equals", {first.op, second.op}, e.where, hint));
  }

  Val call(const Expr& e, const std::optional<std::string>& hint) {
    const Expr& callee = e.children.front();
    std::vector<const Expr*> args;
    for (std::size_t i = 1; i < e.children.size(); ++i) args.push_back(&e.children[i]);
    auto arity = [&](std::size_t n, const std::string& what) {
      if (args.size() != n)
        throw UnsupportedConstruct(e.where, what + " takes " + std::to_string(n) + " argument" +
                                                (n == 1 ? "" : "s") + " here");
    };

    if (callee.kind == Expr::Kind::Attr) {
      const Expr& receiver = callee.children.front();
      if (receiver.kind == Expr::Kind::Name && receiver.text == "math" && !env_.count("math")) {
        for (const auto* a : args) require_numeric(lower(*a, std::nullopt), *a);
        return Val::opaque();
      }
      Val self = lower(receiver, std::nullopt);
      if (!self.is_var() || self.shape != ir::Shape::Str) {
        if (self.kind == Val::Kind::Operand && std::holds_alternative<ir::StrLit>(self.op))
          throw UnsupportedConstruct(callee.where, "methods on string literals are not supported");
        throw UnsupportedConstruct(callee.where, "'" + callee.text + "' applies only to strings");
      }
      if (callee.text == "split") {
        if (args.empty()) throw UnsupportedConstruct(e.where, "split() without a separator is not supported");
        arity(1, "split");
        Val sep = lower(*args[0], std::nullopt);
        if (sep.kind != Val::Kind::Operand || !std::holds_alternative<ir::StrLit>(sep.op))
          throw UnsupportedConstruct(args[0]->where, "split separator must be a string literal");
        if (std::get<ir::StrLit>(sep.op).value.empty())
          throw UnsupportedConstruct(args[0]->where, "split separator must be non-empty");
        return var_val(emit("split_py", {sep.op, self.op}, e.where, hint));
      }
      arity(0, "strip");
      return var_val(emit("strip_py", {self.op}, e.where, hint));
    }

    const std::string& name = callee.text;
    if (env_.count(name)) throw UnsupportedConstruct(callee.where, "'" + name + "' is not callable here");
    if (name == "int") {
      arity(1, "int");
      Val x = lower(*args[0], std::nullopt);
      if (x.numeric()) return x.kind == Val::Kind::Opaque ? Val::opaque() : x;
      if (!x.is_var() || x.shape != ir::Shape::Str)
        throw UnsupportedConstruct(args[0]->where, "int() applies only to strings and integers here");
      return var_val(emit("int_py", {x.op}, e.where, hint));
    }
    if (name == "len") {
      arity(1, "len");
      Val xs = lower(*args[0], std::nullopt);
      if (!xs.is_var() || (xs.shape != ir::Shape::StrList && xs.shape != ir::Shape::IntList))
        throw UnsupportedConstruct(args[0]->where, "len() applies only to lists produced by split or map");
      return var_val(emit("length", {xs.op}, e.where, hint));
    }
    if (name == "list") {
      arity(1, "list");
      Val xs = lower(*args[0], hint);
      if (!xs.is_var() || (xs.shape != ir::Shape::StrList && xs.shape != ir::Shape::IntList))
        throw UnsupportedConstruct(args[0]->where, "list() applies only to lists produced by split or map");
      return xs;
    }
    if (name == "map") {
      arity(2, "map");
      Val f = lower(*args[0], std::nullopt);
      if (f.kind != Val::Kind::Func)
        throw UnsupportedConstruct(args[0]->where, "map function must be int or str.strip");
      Val xs = lower(*args[1], std::nullopt);
      if (!xs.is_var() || xs.shape != ir::Shape::StrList)
        throw UnsupportedConstruct(args[1]->where, "map applies only to lists produced by split");
      return var_val(emit("map", {f.op, xs.op}, e.where, hint));
    }
    if (kOpaqueCalls.count(name)) {
      for (const auto* a : args) {
        Val v = lower(*a, std::nullopt);
        bool ints = v.kind == Val::Kind::Operand && v.shape == ir::Shape::IntList;
        if (!ints) require_numeric(v, *a);
      }
      return Val::opaque();
    }
    throw UnsupportedConstruct(callee.where, "call to '" + name + "' is not supported by any builtin model");
  }

  const Registry& registry_;
  const std::vector<Stmt>& body_;
  ir::Program program_;
  std::set<std::string> used_;
  std::set<std::string> bound_;
  std::map<std::string, ir::Shape> shapes_;
  std::map<std::string, Val> env_;
  int counter_ = 0;
};

const std::set<std::string, std::less<>> kPredefined = {"int", "map",   "len", "list", "abs", "sum",
                                                        "min", "max",   "round", "pow", "str", "math"};

void free_names(const Expr& e, const std::set<std::string>& assigned, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::Name) {
    if (!assigned.count(e.text) && !kPredefined.count(e.text) &&
        std::find(out.begin(), out.end(), e.text) == out.end())
      out.push_back(e.text);
    return;
  }
  if (e.kind == Expr::Kind::Attr) {
    free_names(e.children.front(), assigned, out);
    return;
  }
  for (const auto& c : e.children) free_names(c, assigned, out);
}

}  // namespace

SubjectAST parse_source(std::string_view text, const std::string& file) {
  Lexer lexer(text, file);
  Parser parser(lexer.run(), file);
  return parser.run();
}

ir::Program simplify(const SubjectAST& ast) {
  if (ast.items.empty() && ast.top_level.empty())
    throw SyntaxError(Provenance{ast.file, 1, 1, 1}, "no parser definition found");
  if (ast.items.size() > 1)
    throw UnsupportedConstruct(ast.items[1].where, "only one parser definition per file is supported");
  if (!ast.items.empty()) {
    if (!ast.top_level.empty())
      throw UnsupportedConstruct(ast.top_level.front().where,
                                 "statements outside the parser definition are not supported");
    const auto& f = ast.items.front();
    return Lowerer(f.name, f.param, f.where, f.body).run();
  }
  // A bare statement list parses its single free variable.
  std::set<std::string> assigned;
  std::vector<std::string> free;
  for (const auto& s : ast.top_level) {
    for (const auto& v : s.values) free_names(v, assigned, free);
    for (const auto& t : s.targets) assigned.insert(t.text);
  }
  if (free.size() != 1) {
    std::string message = "top-level statements must read exactly one input variable";
    if (!free.empty()) {
      message += " (found";
      for (const auto& n : free) message += " '" + n + "'";
      message += ")";
    }
    throw UnsupportedConstruct(ast.top_level.front().where, message);
  }
  return Lowerer(free.front(), free.front(), ast.top_level.front().where, ast.top_level).run();
}

ir::Program load_program(std::string_view text, const std::string& file) {
  ir::Program program;
  if (file.size() >= 4 && file.compare(file.size() - 4, 4, ".pir") == 0)
    program = ir::parse_ir(text, file);
  else
    program = simplify(parse_source(text, file));
  auto diagnostics = ir::well_formed(program);
  if (!diagnostics.empty()) {
    DiagKind kind = diagnostics.front().kind;
    throw Error(kind, std::move(diagnostics));
  }
  return program;
}

}  // namespace adhoc::frontend
