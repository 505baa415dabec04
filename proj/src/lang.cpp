#include "adhoc/lang.hpp"

#include <algorithm>

#include "adhoc/escape.hpp"

namespace adhoc {

struct Lang::Node {
  LangKind kind = LangKind::Empty;
  CharSet chars;
  std::string text;
  std::vector<Lang> items;
  int count = 0;
  bool has_definition = false;
  std::vector<Provenance> origin;
};

namespace {

std::shared_ptr<Lang::Node> make(LangKind kind) {
  auto node = std::make_shared<Lang::Node>();
  node->kind = kind;
  return node;
}

const Lang::Node& empty_node() {
  static const Lang::Node node;
  return node;
}

bool is_single_char(const Lang& l) {
  return l.kind() == LangKind::Class || (l.kind() == LangKind::Literal && l.text().size() == 1);
}

CharSet char_set_of(const Lang& l) {
  if (l.kind() == LangKind::Class) return l.chars();
  return chars::of(l.text());
}

}  // namespace

Lang::Lang() : node_(nullptr) {}

LangKind Lang::kind() const { return node_ ? node_->kind : LangKind::Empty; }
const CharSet& Lang::chars() const { return node_ ? node_->chars : empty_node().chars; }
const std::string& Lang::text() const { return node_ ? node_->text : empty_node().text; }
std::span<const Lang> Lang::items() const {
  if (!node_) return {};
  return node_->items;
}
const Lang& Lang::item() const { return node_->items.front(); }
int Lang::count() const { return node_ ? node_->count : 0; }
const Lang* Lang::definition() const {
  return node_ && node_->has_definition ? &node_->items.front() : nullptr;
}
const std::vector<Provenance>& Lang::origin() const {
  return node_ ? node_->origin : empty_node().origin;
}

bool Lang::is_anything() const {
  return kind() == LangKind::Star && item().kind() == LangKind::Class && item().chars().all();
}

Lang Lang::empty() { return Lang(); }

Lang Lang::epsilon() { return Lang(make(LangKind::Epsilon)); }

Lang Lang::cls(const CharSet& set) {
  if (set.none()) return empty();
  auto node = make(LangKind::Class);
  node->chars = set;
  return Lang(std::move(node));
}

Lang Lang::chr(char c) { return literal(std::string(1, c)); }

Lang Lang::literal(std::string text) {
  if (text.empty()) return epsilon();
  auto node = make(LangKind::Literal);
  node->text = std::move(text);
  return Lang(std::move(node));
}

Lang Lang::concat(std::vector<Lang> items) {
  std::vector<Lang> flat;
  for (auto& item : items) {
    switch (item.kind()) {
      case LangKind::Empty: return empty();
      case LangKind::Epsilon: break;
      case LangKind::Concat:
        for (const auto& sub : item.items()) flat.push_back(sub);
        break;
      default: flat.push_back(std::move(item));
    }
  }
  if (flat.empty()) return epsilon();
  if (flat.size() == 1) return flat.front();
  auto node = make(LangKind::Concat);
  node->items = std::move(flat);
  return Lang(std::move(node));
}

Lang Lang::alt(std::vector<Lang> items) {
  std::vector<Lang> flat;
  bool has_epsilon = false;
  auto push = [&](const Lang& l) {
    if (l.kind() == LangKind::Epsilon) {
      has_epsilon = true;
      return;
    }
    if (std::find(flat.begin(), flat.end(), l) == flat.end()) flat.push_back(l);
  };
  for (const auto& item : items) {
    if (item.kind() == LangKind::Empty) continue;
    if (item.kind() == LangKind::Union) {
      for (const auto& sub : item.items()) push(sub);
    } else if (item.kind() == LangKind::Optional) {
      has_epsilon = true;
      push(item.item());
    } else {
      push(item);
    }
  }
  // Single characters merge into one class at the position of the first.
  std::size_t char_like = 0;
  for (const auto& l : flat) char_like += is_single_char(l) ? 1 : 0;
  if (char_like > 1) {
    CharSet merged;
    for (const auto& l : flat)
      if (is_single_char(l)) merged |= char_set_of(l);
    std::vector<Lang> kept;
    bool placed = false;
    for (auto& l : flat) {
      if (!is_single_char(l)) {
        kept.push_back(std::move(l));
      } else if (!placed) {
        kept.push_back(cls(merged));
        placed = true;
      }
    }
    flat = std::move(kept);
  }
  Lang result;
  if (flat.empty()) {
    return has_epsilon ? epsilon() : empty();
  } else if (flat.size() == 1) {
    result = flat.front();
  } else {
    auto node = make(LangKind::Union);
    node->items = std::move(flat);
    result = Lang(std::move(node));
  }
  return has_epsilon ? opt(result) : result;
}

Lang Lang::star(const Lang& item) {
  switch (item.kind()) {
    case LangKind::Empty:
    case LangKind::Epsilon: return epsilon();
    case LangKind::Star: return item;
    case LangKind::Plus:
    case LangKind::Optional: return star(item.item());
    default: break;
  }
  auto node = make(LangKind::Star);
  node->items = {item};
  return Lang(std::move(node));
}

Lang Lang::plus(const Lang& item) {
  switch (item.kind()) {
    case LangKind::Empty:
    case LangKind::Epsilon:
    case LangKind::Star:
    case LangKind::Plus: return item;
    case LangKind::Optional: return star(item.item());
    default: break;
  }
  auto node = make(LangKind::Plus);
  node->items = {item};
  return Lang(std::move(node));
}

Lang Lang::opt(const Lang& item) {
  switch (item.kind()) {
    case LangKind::Empty:
    case LangKind::Epsilon: return epsilon();
    case LangKind::Star:
    case LangKind::Optional: return item;
    case LangKind::Plus: return star(item.item());
    default: break;
  }
  auto node = make(LangKind::Optional);
  node->items = {item};
  return Lang(std::move(node));
}

Lang Lang::repeat(const Lang& item, int count) {
  if (count <= 0) return epsilon();
  if (count == 1) return item;
  if (item.kind() == LangKind::Empty) return empty();
  if (item.kind() == LangKind::Epsilon) return epsilon();
  auto node = make(LangKind::Repeat);
  node->items = {item};
  node->count = count;
  return Lang(std::move(node));
}

Lang Lang::ref(std::string name) {
  auto node = make(LangKind::Ref);
  node->text = std::move(name);
  return Lang(std::move(node));
}

Lang Lang::ref(std::string name, const Lang& definition, std::vector<Provenance> origin) {
  auto node = make(LangKind::Ref);
  node->text = std::move(name);
  node->items = {definition};
  node->has_definition = true;
  node->origin = std::move(origin);
  return Lang(std::move(node));
}

Lang Lang::anything() { return star(cls(chars::all())); }

bool operator==(const Lang& a, const Lang& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case LangKind::Empty:
    case LangKind::Epsilon: return true;
    case LangKind::Class: return a.chars() == b.chars();
    case LangKind::Literal: return a.text() == b.text();
    case LangKind::Ref:
      if (a.text() != b.text()) return false;
      if ((a.definition() == nullptr) != (b.definition() == nullptr)) return false;
      return a.definition() == nullptr || *a.definition() == *b.definition();
    case LangKind::Repeat:
      if (a.count() != b.count()) return false;
      [[fallthrough]];
    default: {
      auto xs = a.items();
      auto ys = b.items();
      return std::equal(xs.begin(), xs.end(), ys.begin(), ys.end());
    }
  }
}

namespace {

void describe(const Lang& l, std::string& out, int prec) {
  switch (l.kind()) {
    case LangKind::Empty: out += "{}"; return;
    case LangKind::Epsilon: out += "()"; return;
    case LangKind::Class: {
      if (l.chars().all()) {
        out += ".";
        return;
      }
      std::string members = chars::members(l.chars());
      if (members.size() == 1) {
        out += escape_line(members);
        return;
      }
      out += "[" + escape_line(members) + "]";
      return;
    }
    case LangKind::Literal:
      if (prec > 1 && l.text().size() > 1)
        out += "(" + escape_line(l.text()) + ")";
      else
        out += escape_line(l.text());
      return;
    case LangKind::Ref: out += "<" + l.text() + ">"; return;
    case LangKind::Concat:
      if (prec > 1) out += "(";
      for (const auto& item : l.items()) describe(item, out, 1);
      if (prec > 1) out += ")";
      return;
    case LangKind::Union: {
      if (prec > 0) out += "(";
      bool first = true;
      for (const auto& item : l.items()) {
        if (!first) out += "|";
        first = false;
        describe(item, out, 0);
      }
      if (prec > 0) out += ")";
      return;
    }
    case LangKind::Star: describe(l.item(), out, 2); out += "*"; return;
    case LangKind::Plus: describe(l.item(), out, 2); out += "+"; return;
    case LangKind::Optional: describe(l.item(), out, 2); out += "?"; return;
    case LangKind::Repeat:
      describe(l.item(), out, 2);
      out += "{" + std::to_string(l.count()) + "}";
      return;
  }
}

}  // namespace

std::string debug_string(const Lang& lang) {
  std::string out;
  describe(lang, out, 0);
  return out;
}

std::size_t node_count(const Lang& lang) {
  std::size_t n = 1;
  for (const auto& item : lang.items()) n += node_count(item);
  return n;
}

}  // namespace adhoc
