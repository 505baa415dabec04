#include "adhoc/ir.hpp"

#include <cctype>
#include <cstdio>

#include "adhoc/models.hpp"

namespace adhoc::ir {

std::string_view shape_name(Shape shape) {
  switch (shape) {
    case Shape::Str: return "string";
    case Shape::StrList: return "string list";
    case Shape::IntList: return "int list";
    case Shape::Int: return "int";
    case Shape::Bool: return "bool";
    case Shape::Function: return "function";
  }
  return "?";
}

namespace {

std::string quote_literal(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\v': out += "\\v"; break;
      case '\f': out += "\\f"; break;
      case '\r': out += "\\r"; break;
      default: {
        auto code = static_cast<unsigned char>(c);
        if (code < 0x20 || code >= 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\x%02x", code);
          out += buf;
        } else {
          out.push_back(c);
        }
      }
    }
  }
  return out + "\"";
}

}  // namespace

std::string operand_text(const Operand& operand) {
  if (const auto* v = std::get_if<Var>(&operand)) return v->name;
  if (const auto* s = std::get_if<StrLit>(&operand)) return quote_literal(s->value);
  if (const auto* i = std::get_if<IntLit>(&operand)) return std::to_string(i->value);
  return std::get<FuncRef>(operand).builtin;
}

bool same_program(const Program& a, const Program& b) {
  if (a.name != b.name || a.param != b.param || a.steps.size() != b.steps.size()) return false;
  if (a.solved() != b.solved()) return false;
  if (a.solved() && !(std::get<Lang>(a.refinement) == std::get<Lang>(b.refinement))) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    const auto& x = a.steps[i];
    const auto& y = b.steps[i];
    if (x.index() != y.index()) return false;
    if (const auto* la = std::get_if<Let>(&x)) {
      const auto& lb = std::get<Let>(y);
      if (la->var != lb.var || la->call.builtin != lb.call.builtin || la->call.args != lb.call.args) return false;
    } else if (std::get<Assert>(x).var != std::get<Assert>(y).var) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Well-formedness

namespace {

struct Checker {
  const Program& program;
  const Registry& registry;
  std::vector<Diagnostic> diagnostics;
  std::map<std::string, std::optional<Shape>> bound;

  void report(DiagKind kind, const Provenance& where, std::string message) {
    diagnostics.push_back({kind, where, std::move(message)});
  }

  void bind(const std::string& name, const Provenance& where, std::optional<Shape> shape) {
    if (registry.find(name)) report(DiagKind::Scope, where, "'" + name + "' is a builtin name and cannot be bound");
    if (bound.count(name)) report(DiagKind::Scope, where, "'" + name + "' is bound more than once");
    bound[name] = shape;
  }

  void run() {
    bind(program.param, program.where, Shape::Str);
    for (const auto& step : program.steps) {
      if (const auto* a = std::get_if<Assert>(&step)) {
        auto it = bound.find(a->var);
        if (it == bound.end()) {
          report(DiagKind::Scope, a->where, "unbound variable '" + a->var + "'");
        } else if (it->second && *it->second != Shape::Bool) {
          report(DiagKind::Shape, a->where,
                 "assert expects a bool, but '" + a->var + "' is a " + std::string(shape_name(*it->second)));
        }
        continue;
      }
      const auto& let = std::get<Let>(step);
      bind(let.var, let.where, check_call(let.call));
    }
  }

  std::optional<Shape> check_call(const Call& call) {
    const BuiltinModel* model = registry.find(call.builtin);
    if (!model) {
      report(DiagKind::Scope, call.where, "unknown builtin '" + call.builtin + "'");
      return std::nullopt;
    }
    std::vector<OperandInfo> infos;
    bool complete = true;
    for (const auto& operand : call.args) {
      OperandInfo info{&operand, std::nullopt};
      if (const auto* v = std::get_if<Var>(&operand)) {
        auto it = bound.find(v->name);
        if (it == bound.end()) {
          report(DiagKind::Scope, call.where, "unbound variable '" + v->name + "'");
          complete = false;
        } else if (!it->second) {
          complete = false;
        } else {
          info.shape = it->second;
        }
      } else if (const auto* f = std::get_if<FuncRef>(&operand)) {
        if (!registry.find(f->builtin)) {
          report(DiagKind::Scope, call.where, "unknown builtin '" + f->builtin + "'");
          complete = false;
        }
      }
      infos.push_back(info);
    }
    if (!complete) return std::nullopt;
    auto result = model->signature(infos, registry);
    if (const auto* shape = std::get_if<Shape>(&result)) return *shape;
    const auto& message = std::get<std::string>(result);
    bool arity = message.find(" operand") != std::string::npos && message.find(", got ") != std::string::npos;
    report(arity ? DiagKind::Arity : DiagKind::Shape, call.where, message);
    return std::nullopt;
  }
};

}  // namespace

std::vector<Diagnostic> well_formed(const Program& program) {
  Checker checker{program, builtins(), {}, {}};
  checker.run();
  return std::move(checker.diagnostics);
}

std::map<std::string, Shape> shapes_of(const Program& program) {
  Checker checker{program, builtins(), {}, {}};
  checker.run();
  std::map<std::string, Shape> out;
  for (const auto& [name, shape] : checker.bound)
    if (shape) out[name] = *shape;
  return out;
}

// ---------------------------------------------------------------------------
// Printing

std::string pretty_print(const Program& program) {
  std::string out = "let " + program.name + " = fun(" + program.param + " : String {";
  if (program.solved())
    out += "= " + debug_string(std::get<Lang>(program.refinement));
  else
    out += "*";
  out += "}) {\n";
  for (const auto& step : program.steps) {
    if (const auto* let = std::get_if<Let>(&step)) {
      out += "  let " + let->var + " = " + let->call.builtin;
      for (const auto& a : let->call.args) out += " " + operand_text(a);
      out += " in\n";
    } else {
      out += "  assert " + std::get<Assert>(step).var + " in\n";
    }
  }
  out += "  accept\n}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Reading

namespace {

enum class Tok { Ident, Int, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long long number = 0;
  Provenance where;
};

class IrLexer {
 public:
  IrLexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.where = here(1);
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (match_utf8("\xCE\xBB")) {  // lambda
        t.kind = Tok::Ident;
        t.text = "fun";
      } else if (match_utf8("\xE2\x8B\x86")) {  // star operator
        t.kind = Tok::Punct;
        t.text = "*";
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          advance();
        t.kind = Tok::Ident;
        t.text = std::string(text_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        std::size_t start = pos_;
        advance();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        t.kind = Tok::Int;
        t.text = std::string(text_.substr(start, pos_ - start));
        if (t.text.size() > 18) throw SyntaxError(t.where, "integer literal too large");
        t.number = std::stoll(t.text);
      } else if (c == '"') {
        t.kind = Tok::String;
        t.text = read_string();
      } else if (std::string_view("(){}:.=*").find(c) != std::string_view::npos) {
        t.kind = Tok::Punct;
        t.text = std::string(1, c);
        advance();
      } else {
        throw SyntaxError(t.where, std::string("unexpected character '") + c + "'");
      }
      t.where.length = std::max(1, static_cast<int>(t.text.size()));
      out.push_back(std::move(t));
    }
  }

 private:
  Provenance here(int length) const { return Provenance{file_, line_, column_, length}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool match_utf8(std::string_view seq) {
    if (text_.substr(pos_, seq.size()) != seq) return false;
    pos_ += seq.size();
    ++column_;
    return true;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string read_string() {
    Provenance start = here(1);
    advance();
    std::string out;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') throw SyntaxError(start, "unterminated string literal");
      char c = text_[pos_];
      advance();
      if (c == '"') return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (pos_ >= text_.size()) throw SyntaxError(start, "unterminated string literal");
      char e = text_[pos_];
      advance();
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 't': out.push_back('\t'); break;
        case 'n': out.push_back('\n'); break;
        case 'v': out.push_back('\v'); break;
        case 'f': out.push_back('\f'); break;
        case 'r': out.push_back('\r'); break;
        case 'x': {
          if (pos_ + 2 > text_.size()) throw SyntaxError(start, "bad \\x escape");
          std::string hex(text_.substr(pos_, 2));
          if (!std::isxdigit(static_cast<unsigned char>(hex[0])) || !std::isxdigit(static_cast<unsigned char>(hex[1])))
            throw SyntaxError(start, "bad \\x escape");
          out.push_back(static_cast<char>(std::stoi(hex, nullptr, 16)));
          advance();
          advance();
          break;
        }
        default: throw SyntaxError(start, std::string("unknown escape '\\") + e + "'");
      }
    }
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class IrParser {
 public:
  IrParser(std::vector<Token> tokens, const Registry& registry) : toks_(std::move(tokens)), registry_(registry) {}

  Program run() {
    Program p;
    p.where = peek().where;
    expect_word("let");
    p.name = ident("program name");
    expect_punct("=");
    expect_word("fun");
    expect_punct("(");
    p.param = ident("parameter name");
    if (is_punct(":")) {
      next();
      expect_word("String");
      expect_punct("{");
      if (is_punct("=")) throw SyntaxError(peek().where, "solved refinements are output-only and cannot be read");
      expect_punct("*");
      expect_punct("}");
    }
    expect_punct(")");
    bool braces = false;
    if (is_punct("{")) {
      braces = true;
    } else if (!is_punct(".")) {
      throw SyntaxError(peek().where, "expected '{' or '.' after the parameter list");
    }
    next();
    body(p);
    if (braces) expect_punct("}");
    if (peek().kind != Tok::End) throw SyntaxError(peek().where, "unexpected '" + peek().text + "' after program");
    return p;
  }

 private:
  void body(Program& p) {
    while (true) {
      const Token& t = peek();
      if (is_word("accept")) {
        p.accept_where = t.where;
        next();
        return;
      }
      if (is_word("let")) {
        Let let;
        let.where = t.where;
        next();
        let.var = ident("variable name");
        expect_punct("=");
        let.call.where = peek().where;
        let.call.builtin = ident("builtin name");
        while (peek().kind == Tok::Ident || peek().kind == Tok::Int || peek().kind == Tok::String) {
          if (is_word("in")) break;
          let.call.args.push_back(operand());
        }
        p.steps.emplace_back(std::move(let));
      } else if (is_word("assert")) {
        Assert a;
        a.where = t.where;
        next();
        a.var = ident("variable name");
        p.steps.emplace_back(std::move(a));
      } else {
        throw SyntaxError(t.where, "expected 'let', 'assert' or 'accept'");
      }
      if (is_word("in")) {
        next();
        continue;
      }
      // A chain may end without `in accept`; acceptance is then implicit.
      p.accept_where = peek().where;
      return;
    }
  }

  Operand operand() {
    Token t = peek();
    next();
    switch (t.kind) {
      case Tok::Int: return IntLit{t.number};
      case Tok::String: return StrLit{t.text};
      default:
        if (registry_.find(t.text)) return FuncRef{t.text};
        return Var{t.text};
    }
  }

  const Token& peek() const { return toks_[std::min(pos_, toks_.size() - 1)]; }
  void next() {
    if (pos_ < toks_.size() - 1) ++pos_;
  }
  bool is_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool is_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) throw SyntaxError(peek().where, "expected '" + std::string(p) + "'");
    next();
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) throw SyntaxError(peek().where, "expected '" + std::string(w) + "'");
    next();
  }
  std::string ident(std::string_view what) {
    if (peek().kind != Tok::Ident) throw SyntaxError(peek().where, "expected " + std::string(what));
    std::string text = peek().text;
    for (std::string_view keyword : {"let", "in", "assert", "accept", "fun"})
      if (text == keyword) throw SyntaxError(peek().where, "expected " + std::string(what) + ", got '" + text + "'");
    next();
    return text;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Registry& registry_;
};

}  // namespace

Program parse_ir(std::string_view text, const std::string& file) {
  IrLexer lexer(text, file);
  IrParser parser(lexer.run(), builtins());
  return parser.run();
}

}  // namespace adhoc::ir
