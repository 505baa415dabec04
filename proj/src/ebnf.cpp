#include <cctype>
#include <cstdio>

#include "adhoc/grammar.hpp"
#include "adhoc/models.hpp"

namespace adhoc {

namespace {

constexpr std::string_view kArrow = "\xE2\x86\x92";         // →
constexpr std::string_view kVisibleSpace = "\xE2\x90\xA3";  // ␣
constexpr std::string_view kEmptySet = "\xE2\x88\x85";      // ∅
constexpr std::string_view kEllipsis = "..";

std::string terminal(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case ' ': out += kVisibleSpace; break;
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\v': out += "\\v"; break;
      case '\f': out += "\\f"; break;
      case '\r': out += "\\r"; break;
      default: {
        auto code = static_cast<unsigned char>(c);
        if (code < 0x20 || code == 0x7f) {
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

// Binding strength of a rendered node. Ranges and `any - X` bind tighter than
// a sequence but are parenthesized under a postfix operator for legibility.
enum class Level { Alternation, Sequence, Compound, Atom };

struct Rendered {
  std::string text;
  Level level;
};

// Alternatives of single characters and "a".."z" runs, ascending.
std::vector<std::string> class_pieces(const CharSet& set) {
  std::vector<std::string> pieces;
  int c = 0;
  while (c < kAlphabetSize) {
    if (!set[c]) {
      ++c;
      continue;
    }
    int end = c;
    while (end + 1 < kAlphabetSize && set[end + 1]) ++end;
    if (end - c >= 2) {
      pieces.push_back(terminal(std::string(1, static_cast<char>(c))) + std::string(kEllipsis) +
                       terminal(std::string(1, static_cast<char>(end))));
    } else {
      for (int x = c; x <= end; ++x) pieces.push_back(terminal(std::string(1, static_cast<char>(x))));
    }
    c = end + 1;
  }
  return pieces;
}

Rendered render_class(const CharSet& set) {
  if (set.all()) return {"any", Level::Atom};
  if (set.none()) return {std::string(kEmptySet), Level::Atom};
  if (set.count() > kAlphabetSize / 2) {
    auto pieces = class_pieces(~set);
    if (pieces.size() == 1) return {"any - " + pieces.front(), Level::Compound};
    std::string text = "any - (";
    for (std::size_t i = 0; i < pieces.size(); ++i) text += (i ? " | " : "") + pieces[i];
    return {text + ")", Level::Compound};
  }
  auto pieces = class_pieces(set);
  if (pieces.size() == 1) return {pieces.front(), set.count() == 1 ? Level::Atom : Level::Compound};
  std::string text;
  for (std::size_t i = 0; i < pieces.size(); ++i) text += (i ? " | " : "") + pieces[i];
  return {text, Level::Alternation};
}

std::string wrap(const Rendered& r, Level need) {
  return r.level < need ? "(" + r.text + ")" : r.text;
}

Rendered render(const Lang& lang) {
  switch (lang.kind()) {
    case LangKind::Empty: return {std::string(kEmptySet), Level::Atom};
    case LangKind::Epsilon: return {"\"\"", Level::Atom};
    case LangKind::Class: return render_class(lang.chars());
    case LangKind::Literal: return {terminal(lang.text()), Level::Atom};
    case LangKind::Ref: return {lang.text(), Level::Atom};
    case LangKind::Concat: {
      std::string text;
      for (const auto& i : lang.items()) {
        if (!text.empty()) text += " ";
        text += wrap(render(i), Level::Sequence);
      }
      return {text, Level::Sequence};
    }
    case LangKind::Union: {
      std::string text;
      for (const auto& i : lang.items()) {
        if (!text.empty()) text += " | ";
        text += render(i).text;
      }
      return {text, Level::Alternation};
    }
    case LangKind::Star: return {wrap(render(lang.item()), Level::Atom) + "*", Level::Atom};
    case LangKind::Plus: return {wrap(render(lang.item()), Level::Atom) + "+", Level::Atom};
    case LangKind::Optional: return {wrap(render(lang.item()), Level::Atom) + "?", Level::Atom};
    case LangKind::Repeat:
      return {wrap(render(lang.item()), Level::Atom) + "{" + std::to_string(lang.count()) + "}", Level::Atom};
  }
  return {"?", Level::Atom};
}

}  // namespace

std::string ebnf_body(const Lang& body) { return render(body).text; }

std::string to_ebnf(const Grammar& g) {
  std::string out;
  for (const auto& p : g.productions) {
    out += p.name + " " + std::string(kArrow) + " ";
    const NamedSet* set = p.body.kind() == LangKind::Class ? named_set_for(p.body.chars()) : nullptr;
    if (set && set->name == p.name) {
      // Named sets list their members in display order: space → "␣" | "\t" | ...
      for (std::size_t i = 0; i < set->members.size(); ++i)
        out += (i ? " | " : "") + terminal(std::string(1, set->members[i]));
    } else {
      out += ebnf_body(p.body);
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reader

namespace {

enum class ETok { Ident, String, Arrow, Punct, Range, EmptySet, End };

struct EToken {
  ETok kind = ETok::End;
  std::string text;
  Provenance where;
};

class EbnfLexer {
 public:
  EbnfLexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<EToken> run() {
    std::vector<EToken> out;
    while (true) {
      skip();
      EToken t;
      t.where = Provenance{file_, line_, column_, 1};
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (starts(kArrow)) {
        eat(kArrow.size(), 1);
        t.kind = ETok::Arrow;
      } else if (starts("::=")) {
        eat(3, 3);
        t.kind = ETok::Arrow;
      } else if (starts("->")) {
        eat(2, 2);
        t.kind = ETok::Arrow;
      } else if (c == '=') {
        eat(1, 1);
        t.kind = ETok::Arrow;
      } else if (starts(kEmptySet)) {
        eat(kEmptySet.size(), 1);
        t.kind = ETok::EmptySet;
      } else if (starts(kEllipsis)) {
        eat(2, 2);
        t.kind = ETok::Range;
      } else if (starts("\xE2\x80\xA6")) {  // … also reads as a range
        eat(3, 1);
        t.kind = ETok::Range;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          eat(1, 1);
        t.kind = ETok::Ident;
        t.text = std::string(text_.substr(start, pos_ - start));
      } else if (c == '"' || c == '\'') {
        t.kind = ETok::String;
        t.text = string(c);
      } else if (std::string_view("()|*+?{}-;").find(c) != std::string_view::npos) {
        eat(1, 1);
        t.kind = ETok::Punct;
        t.text = std::string(1, c);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) eat(1, 1);
        t.kind = ETok::Punct;
        t.text = std::string(text_.substr(start, pos_ - start));
      } else {
        throw SyntaxError(t.where, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool starts(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void eat(std::size_t bytes, int columns) {
    pos_ += bytes;
    column_ += columns;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        column_ = 1;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        eat(1, 1);
      } else {
        break;
      }
    }
  }

  std::string string(char quote) {
    Provenance start{file_, line_, column_, 1};
    eat(1, 1);
    std::string out;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') throw SyntaxError(start, "unterminated terminal");
      if (text_[pos_] == quote) {
        eat(1, 1);
        return out;
      }
      if (starts(kVisibleSpace)) {
        out.push_back(' ');
        eat(kVisibleSpace.size(), 1);
        continue;
      }
      char c = text_[pos_];
      if (static_cast<unsigned char>(c) >= 0x80) throw SyntaxError(start, "terminals must be ASCII");
      if (c != '\\') {
        out.push_back(c);
        eat(1, 1);
        continue;
      }
      if (pos_ + 1 >= text_.size()) throw SyntaxError(start, "unterminated terminal");
      char e = text_[pos_ + 1];
      eat(2, 2);
      switch (e) {
        case 't': out.push_back('\t'); break;
        case 'n': out.push_back('\n'); break;
        case 'v': out.push_back('\v'); break;
        case 'f': out.push_back('\f'); break;
        case 'r': out.push_back('\r'); break;
        case 's': out.push_back(' '); break;
        case '\\': out.push_back('\\'); break;
        case '"': out.push_back('"'); break;
        case '\'': out.push_back('\''); break;
        case 'x': {
          if (pos_ + 2 > text_.size() || !std::isxdigit(static_cast<unsigned char>(text_[pos_])) ||
              !std::isxdigit(static_cast<unsigned char>(text_[pos_ + 1])))
            throw SyntaxError(start, "bad \\x escape");
          int code = std::stoi(std::string(text_.substr(pos_, 2)), nullptr, 16);
          if (code >= kAlphabetSize) throw SyntaxError(start, "terminals must be ASCII");
          out.push_back(static_cast<char>(code));
          eat(2, 2);
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

class EbnfParser {
 public:
  explicit EbnfParser(std::vector<EToken> tokens) : toks_(std::move(tokens)) {}

  Grammar run() {
    Grammar g;
    while (peek().kind != ETok::End) {
      if (is_punct(";")) {
        next();
        continue;
      }
      if (peek().kind != ETok::Ident || peek(1).kind != ETok::Arrow)
        throw SyntaxError(peek().where, "expected a production 'name → ...'");
      Production p;
      p.origin.push_back(peek().where);
      p.name = next().text;
      if (p.name == "any") throw SyntaxError(p.origin.front(), "'any' is reserved");
      next();
      p.body = alternation();
      if (g.find(p.name)) throw SyntaxError(p.origin.front(), "nonterminal '" + p.name + "' is defined twice");
      if (g.productions.empty()) g.start = p.name;
      g.productions.push_back(std::move(p));
    }
    if (g.productions.empty()) throw SyntaxError(peek().where, "no productions");
    return g;
  }

 private:
  const EToken& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const EToken& next() {
    const EToken& t = toks_[pos_];
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_punct(std::string_view p) const { return peek().kind == ETok::Punct && peek().text == p; }

  bool starts_primary() const {
    const EToken& t = peek();
    if (t.kind == ETok::Ident) return peek(1).kind != ETok::Arrow;
    return t.kind == ETok::String || t.kind == ETok::EmptySet || (t.kind == ETok::Punct && t.text == "(");
  }

  Lang alternation() {
    std::vector<Lang> alts = {sequence()};
    while (is_punct("|")) {
      next();
      alts.push_back(sequence());
    }
    return alts.size() == 1 ? alts.front() : Lang::alt(std::move(alts));
  }

  Lang sequence() {
    if (!starts_primary()) throw SyntaxError(peek().where, "expected a terminal, nonterminal or '('");
    std::vector<Lang> items;
    while (starts_primary()) items.push_back(postfix());
    return items.size() == 1 ? items.front() : Lang::concat(std::move(items));
  }

  Lang postfix() {
    Lang base = primary();
    while (true) {
      if (is_punct("*")) {
        next();
        base = Lang::star(base);
      } else if (is_punct("+")) {
        next();
        base = Lang::plus(base);
      } else if (is_punct("?")) {
        next();
        base = Lang::opt(base);
      } else if (is_punct("{")) {
        next();
        if (peek().kind != ETok::Punct || !std::isdigit(static_cast<unsigned char>(peek().text[0])))
          throw SyntaxError(peek().where, "expected a repetition count");
        int count = std::stoi(next().text);
        if (!is_punct("}")) throw SyntaxError(peek().where, "expected '}'");
        next();
        base = Lang::repeat(base, count);
      } else {
        return base;
      }
    }
  }

  Lang primary() {
    const EToken& t = peek();
    if (t.kind == ETok::EmptySet) {
      next();
      return Lang::empty();
    }
    if (t.kind == ETok::String) {
      std::string text = next().text;
      if (peek().kind == ETok::Range) {
        next();
        if (peek().kind != ETok::String) throw SyntaxError(peek().where, "expected a terminal after '..'");
        Provenance at = peek().where;
        std::string hi = next().text;
        if (text.size() != 1 || hi.size() != 1 || text[0] > hi[0])
          throw SyntaxError(at, "a range needs two single characters in ascending order");
        return Lang::cls(chars::range(static_cast<unsigned char>(text[0]), static_cast<unsigned char>(hi[0])));
      }
      return text.empty() ? Lang::epsilon() : Lang::literal(text);
    }
    if (t.kind == ETok::Ident) {
      std::string name = next().text;
      if (name != "any") return Lang::ref(name);
      if (!is_punct("-")) return Lang::cls(chars::all());
      next();
      Lang excluded = primary();
      if (!excluded_chars(excluded)) throw SyntaxError(t.where, "'any -' must exclude single characters");
      return Lang::cls(chars::all() & ~*excluded_chars(excluded));
    }
    if (t.kind == ETok::Punct && t.text == "(") {
      next();
      Lang inner = alternation();
      if (!is_punct(")")) throw SyntaxError(peek().where, "expected ')'");
      next();
      return inner;
    }
    throw SyntaxError(t.where, "expected a terminal, nonterminal or '('");
  }

  static std::optional<CharSet> excluded_chars(const Lang& lang) {
    switch (lang.kind()) {
      case LangKind::Class: return lang.chars();
      case LangKind::Literal:
        if (lang.text().size() == 1) return chars::of(lang.text());
        return std::nullopt;
      case LangKind::Union: {
        CharSet set;
        for (const auto& i : lang.items()) {
          auto part = excluded_chars(i);
          if (!part) return std::nullopt;
          set |= *part;
        }
        return set;
      }
      default: return std::nullopt;
    }
  }

  std::vector<EToken> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Grammar parse_ebnf(std::string_view text, const std::string& file) {
  EbnfLexer lexer(text, file);
  EbnfParser parser(lexer.run());
  return parser.run();
}

}  // namespace adhoc
