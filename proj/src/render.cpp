#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include "adhoc/grammar.hpp"
#include "json.hpp"

namespace adhoc {

// ---------------------------------------------------------------------------
// Regex: one ECMAScript pattern, meant for whole-string matching.

namespace {

std::string hex_escape(unsigned char c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\x%02X", c);
  return buf;
}

std::string regex_char(char c, bool in_class) {
  switch (c) {
    case '\t': return "\\t";
    case '\n': return "\\n";
    case '\v': return "\\v";
    case '\f': return "\\f";
    case '\r': return "\\r";
    default: break;
  }
  auto code = static_cast<unsigned char>(c);
  if (code < 0x20 || code == 0x7f) return hex_escape(code);
  std::string_view special = in_class ? "\\]^-[" : "\\^$.|?*+()[]{}/";
  if (special.find(c) != std::string_view::npos) return std::string("\\") + c;
  return std::string(1, c);
}

std::string regex_class(const CharSet& set) {
  if (set.count() == 1) {
    for (int c = 0; c < kAlphabetSize; ++c)
      if (set[c]) return regex_char(static_cast<char>(c), false);
  }
  std::string out = "[";
  int c = 0;
  while (c < kAlphabetSize) {
    if (!set[c]) {
      ++c;
      continue;
    }
    int end = c;
    while (end + 1 < kAlphabetSize && set[end + 1]) ++end;
    if (end - c >= 2) {
      out += regex_char(static_cast<char>(c), true) + "-" + regex_char(static_cast<char>(end), true);
    } else {
      for (int x = c; x <= end; ++x) out += regex_char(static_cast<char>(x), true);
    }
    c = end + 1;
  }
  return out + "]";
}

// Quantified pieces take no further postfix operator: ECMAScript reads a?? and
// a{3}? as lazy quantifiers and rejects a**.
enum class RLevel { Alternation, Sequence, Quantified, Atom };

struct RegexPiece {
  std::string text;
  RLevel level;
};

std::string group(const RegexPiece& p, RLevel need) { return p.level < need ? "(?:" + p.text + ")" : p.text; }

RegexPiece regex(const Lang& lang, const RefResolver& resolve) {
  switch (lang.kind()) {
    case LangKind::Empty: return {"(?!)", RLevel::Atom};
    case LangKind::Epsilon: return {"", RLevel::Sequence};
    case LangKind::Class:
      if (lang.chars().none()) return {"(?!)", RLevel::Atom};
      return {regex_class(lang.chars()), RLevel::Atom};
    case LangKind::Literal: {
      std::string text;
      for (char c : lang.text()) text += regex_char(c, false);
      return {text, lang.text().size() == 1 ? RLevel::Atom : RLevel::Sequence};
    }
    case LangKind::Concat: {
      std::string text;
      for (const auto& i : lang.items()) text += group(regex(i, resolve), RLevel::Sequence);
      return {text, RLevel::Sequence};
    }
    case LangKind::Union: {
      std::string text;
      for (std::size_t i = 0; i < lang.items().size(); ++i)
        text += (i ? "|" : "") + regex(lang.items()[i], resolve).text;
      return {text, RLevel::Alternation};
    }
    case LangKind::Star: return {group(regex(lang.item(), resolve), RLevel::Atom) + "*", RLevel::Quantified};
    case LangKind::Plus: return {group(regex(lang.item(), resolve), RLevel::Atom) + "+", RLevel::Quantified};
    case LangKind::Optional: return {group(regex(lang.item(), resolve), RLevel::Atom) + "?", RLevel::Quantified};
    case LangKind::Repeat:
      return {group(regex(lang.item(), resolve), RLevel::Atom) + "{" + std::to_string(lang.count()) + "}",
              RLevel::Quantified};
    case LangKind::Ref: {
      const Lang* def = lang.definition() ? lang.definition() : resolve(lang.text());
      return regex(*def, resolve);
    }
  }
  return {"", RLevel::Sequence};
}

bool recursive(const Grammar& g) {
  std::map<std::string, int> state;  // 1 visiting, 2 done
  std::function<bool(const Lang&)> walk = [&](const Lang& lang) -> bool {
    if (lang.kind() == LangKind::Ref) {
      if (lang.definition()) return walk(*lang.definition());
      int& s = state[lang.text()];
      if (s == 1) return true;
      if (s == 2) return false;
      s = 1;
      bool found = walk(g.find(lang.text())->body);
      state[lang.text()] = 2;
      return found;
    }
    if (lang.kind() == LangKind::Concat || lang.kind() == LangKind::Union || lang.kind() == LangKind::Star ||
        lang.kind() == LangKind::Plus || lang.kind() == LangKind::Optional || lang.kind() == LangKind::Repeat)
      for (const auto& i : lang.items())
        if (walk(i)) return true;
    return false;
  };
  return walk(Lang::ref(g.start));
}

}  // namespace

std::string to_regex(const Grammar& g) {
  auto problems = g.validate();
  if (!problems.empty()) throw GrammarError(std::move(problems));
  // Recursive productions cannot be inlined; go through the automaton.
  if (recursive(g)) return regex(to_lang(compile_dfa(g)), {}).text;
  return regex(Lang::ref(g.start), g.resolver()).text;
}

// ---------------------------------------------------------------------------
// JSON, schema version 1.

namespace {

using nlohmann::ordered_json;

ordered_json node_json(const Lang& lang) {
  ordered_json j;
  auto items = [&] {
    ordered_json arr = ordered_json::array();
    for (const auto& i : lang.items()) arr.push_back(node_json(i));
    return arr;
  };
  switch (lang.kind()) {
    case LangKind::Empty: j["kind"] = "empty"; break;
    case LangKind::Epsilon: j["kind"] = "epsilon"; break;
    case LangKind::Class:
      j["kind"] = "class";
      j["chars"] = chars::members(lang.chars());
      break;
    case LangKind::Literal:
      j["kind"] = "literal";
      j["text"] = lang.text();
      break;
    case LangKind::Concat:
      j["kind"] = "concat";
      j["items"] = items();
      break;
    case LangKind::Union:
      j["kind"] = "union";
      j["items"] = items();
      break;
    case LangKind::Star:
      j["kind"] = "star";
      j["item"] = node_json(lang.item());
      break;
    case LangKind::Plus:
      j["kind"] = "plus";
      j["item"] = node_json(lang.item());
      break;
    case LangKind::Optional:
      j["kind"] = "optional";
      j["item"] = node_json(lang.item());
      break;
    case LangKind::Repeat:
      j["kind"] = "repeat";
      j["item"] = node_json(lang.item());
      j["count"] = lang.count();
      break;
    case LangKind::Ref:
      j["kind"] = "ref";
      j["name"] = lang.text();
      break;
  }
  return j;
}

[[noreturn]] void bad(const std::string& file, const std::string& message) {
  throw SyntaxError(Provenance{file}, message);
}

Lang node_from(const ordered_json& j, const std::string& file) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) bad(file, "node without a string 'kind'");
  const std::string kind = j["kind"];
  auto child = [&] {
    if (!j.contains("item")) bad(file, "'" + kind + "' node without 'item'");
    return node_from(j["item"], file);
  };
  auto children = [&] {
    if (!j.contains("items") || !j["items"].is_array()) bad(file, "'" + kind + "' node without 'items'");
    std::vector<Lang> out;
    for (const auto& i : j["items"]) out.push_back(node_from(i, file));
    return out;
  };
  if (kind == "empty") return Lang::empty();
  if (kind == "epsilon") return Lang::epsilon();
  if (kind == "class") {
    const std::string members = j.value("chars", "");
    if (!chars::is_ascii(members)) bad(file, "class members must be ASCII");
    return Lang::cls(chars::of(members));
  }
  if (kind == "literal") {
    const std::string text = j.value("text", "");
    if (!chars::is_ascii(text)) bad(file, "literals must be ASCII");
    return text.empty() ? Lang::epsilon() : Lang::literal(text);
  }
  if (kind == "concat") return Lang::concat(children());
  if (kind == "union") return Lang::alt(children());
  if (kind == "star") return Lang::star(child());
  if (kind == "plus") return Lang::plus(child());
  if (kind == "optional") return Lang::opt(child());
  if (kind == "repeat") {
    if (!j.contains("count") || !j["count"].is_number_integer() || j["count"].get<int>() < 0)
      bad(file, "'repeat' node needs a non-negative 'count'");
    return Lang::repeat(child(), j["count"].get<int>());
  }
  if (kind == "ref") {
    if (!j.contains("name") || !j["name"].is_string()) bad(file, "'ref' node without 'name'");
    return Lang::ref(j["name"].get<std::string>());
  }
  bad(file, "unknown node kind '" + kind + "'");
}

}  // namespace

std::string to_json(const Grammar& g) {
  ordered_json doc;
  doc["version"] = 1;
  doc["start"] = g.start;
  doc["alphabet"] = "ascii";
  ordered_json productions = ordered_json::object();
  ordered_json provenance = ordered_json::object();
  for (const auto& p : g.productions) {
    productions[p.name] = node_json(p.body);
    ordered_json spans = ordered_json::array();
    for (const auto& w : p.origin)
      spans.push_back({{"file", w.file}, {"line", w.line}, {"column", w.column}, {"length", w.length}});
    provenance[p.name] = spans;
  }
  doc["productions"] = productions;
  doc["provenance"] = provenance;
  return doc.dump(2) + "\n";
}

Grammar grammar_from_json(std::string_view text, const std::string& file) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(file, e.what());
  }
  if (!doc.is_object() || !doc.contains("start") || !doc.contains("productions") || !doc["productions"].is_object())
    bad(file, "grammar document needs 'start' and 'productions'");
  if (doc.value("alphabet", "ascii") != "ascii") bad(file, "only the ascii alphabet is supported");
  Grammar g;
  g.start = doc["start"].get<std::string>();
  for (const auto& [name, node] : doc["productions"].items()) {
    Production p;
    p.name = name;
    p.body = node_from(node, file);
    if (doc.contains("provenance") && doc["provenance"].contains(name))
      for (const auto& s : doc["provenance"][name])
        p.origin.push_back(Provenance{s.value("file", ""), s.value("line", 1), s.value("column", 1),
                                      s.value("length", 1)});
    g.productions.push_back(std::move(p));
  }
  return g;
}

}  // namespace adhoc
