#include "adhoc/grammar.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

namespace adhoc {

const Production* Grammar::find(std::string_view name) const {
  for (const auto& p : productions)
    if (p.name == name) return &p;
  return nullptr;
}

RefResolver Grammar::resolver() const {
  return [this](std::string_view name) -> const Lang* {
    const Production* p = find(name);
    return p ? &p->body : nullptr;
  };
}

namespace {

void collect_refs(const Lang& lang, std::vector<std::string>& out) {
  if (lang.kind() == LangKind::Ref) {
    if (std::find(out.begin(), out.end(), lang.text()) == out.end()) out.push_back(lang.text());
    if (lang.definition()) collect_refs(*lang.definition(), out);
    return;
  }
  if (lang.kind() == LangKind::Concat || lang.kind() == LangKind::Union || lang.kind() == LangKind::Star ||
      lang.kind() == LangKind::Plus || lang.kind() == LangKind::Optional || lang.kind() == LangKind::Repeat)
    for (const auto& i : lang.items()) collect_refs(i, out);
}

std::vector<Diagnostic> structural_problems(const Grammar& g) {
  std::vector<Diagnostic> out;
  auto report = [&](const std::string& message) { out.push_back({DiagKind::Grammar, Provenance{"<grammar>"}, message}); };
  std::set<std::string> seen;
  for (const auto& p : g.productions)
    if (!seen.insert(p.name).second) report("nonterminal '" + p.name + "' is defined more than once");
  if (!g.find(g.start)) report("start symbol '" + g.start + "' is not defined");
  for (const auto& p : g.productions) {
    std::vector<std::string> refs;
    collect_refs(p.body, refs);
    for (const auto& r : refs)
      if (!g.find(r)) report("nonterminal '" + r + "' used by '" + p.name + "' is not defined");
  }
  return out;
}

// Rebuilds `lang` with embedded Ref definitions hoisted into `out`.
Lang hoist(const Lang& lang, std::vector<Production>& out, const std::vector<Provenance>& fallback) {
  switch (lang.kind()) {
    case LangKind::Ref: {
      if (const Lang* def = lang.definition()) {
        auto origin = lang.origin().empty() ? fallback : lang.origin();
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.name == lang.text(); });
        if (it == out.end()) {
          out.push_back({lang.text(), Lang(), origin});
          Lang body = hoist(*def, out, origin);
          auto again = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.name == lang.text(); });
          again->body = body;
        } else {
          for (const auto& o : origin)
            if (std::find(it->origin.begin(), it->origin.end(), o) == it->origin.end()) it->origin.push_back(o);
        }
      }
      return Lang::ref(lang.text());
    }
    case LangKind::Concat:
    case LangKind::Union: {
      std::vector<Lang> items;
      for (const auto& i : lang.items()) items.push_back(hoist(i, out, fallback));
      return lang.kind() == LangKind::Concat ? Lang::concat(std::move(items)) : Lang::alt(std::move(items));
    }
    case LangKind::Star: return Lang::star(hoist(lang.item(), out, fallback));
    case LangKind::Plus: return Lang::plus(hoist(lang.item(), out, fallback));
    case LangKind::Optional: return Lang::opt(hoist(lang.item(), out, fallback));
    case LangKind::Repeat: return Lang::repeat(hoist(lang.item(), out, fallback), lang.count());
    default: return lang;
  }
}

// Classes equal to a named set become references to it.
Lang name_sets(const Lang& lang, std::set<std::string>& used, const std::set<std::string>& blocked) {
  switch (lang.kind()) {
    case LangKind::Class: {
      const NamedSet* set = named_set_for(lang.chars());
      if (!set || blocked.count(set->name)) return lang;
      used.insert(set->name);
      return Lang::ref(set->name);
    }
    case LangKind::Concat:
    case LangKind::Union: {
      std::vector<Lang> items;
      for (const auto& i : lang.items()) items.push_back(name_sets(i, used, blocked));
      return lang.kind() == LangKind::Concat ? Lang::concat(std::move(items)) : Lang::alt(std::move(items));
    }
    case LangKind::Star: return Lang::star(name_sets(lang.item(), used, blocked));
    case LangKind::Plus: return Lang::plus(name_sets(lang.item(), used, blocked));
    case LangKind::Optional: return Lang::opt(name_sets(lang.item(), used, blocked));
    case LangKind::Repeat: return Lang::repeat(name_sets(lang.item(), used, blocked), lang.count());
    default: return lang;
  }
}

// X (sep X)*  ~>  X | X sep S
std::optional<Lang> right_recursive(const std::string& start, const Lang& body) {
  if (body.kind() != LangKind::Concat) return std::nullopt;
  auto items = body.items();
  const Lang& tail = items.back();
  if (tail.kind() != LangKind::Star || tail.item().kind() != LangKind::Concat) return std::nullopt;
  std::vector<Lang> head(items.begin(), items.end() - 1);
  auto loop = tail.item().items();
  if (loop.size() <= head.size()) return std::nullopt;
  std::size_t sep_len = loop.size() - head.size();
  for (std::size_t i = 0; i < head.size(); ++i)
    if (!(loop[sep_len + i] == head[i])) return std::nullopt;
  Lang element = Lang::concat(head);
  std::vector<Lang> recursive(head);
  recursive.insert(recursive.end(), loop.begin(), loop.begin() + static_cast<std::ptrdiff_t>(sep_len));
  recursive.push_back(Lang::ref(start));
  return Lang::alt({element, Lang::concat(std::move(recursive))});
}

// Start first, then breadth-first by reference, each level alphabetical.
std::vector<Production> display_order(const std::string& start, std::vector<Production> productions) {
  std::vector<Production> out;
  std::set<std::string> placed;
  std::vector<std::string> level = {start};
  while (!level.empty()) {
    std::vector<std::string> next;
    for (const auto& name : level) {
      auto it = std::find_if(productions.begin(), productions.end(), [&](const auto& p) { return p.name == name; });
      if (it == productions.end() || !placed.insert(name).second) continue;
      out.push_back(*it);
      std::vector<std::string> refs;
      collect_refs(it->body, refs);
      for (const auto& r : refs)
        if (!placed.count(r) && std::find(next.begin(), next.end(), r) == next.end()) next.push_back(r);
    }
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
  for (auto& p : productions)
    if (!placed.count(p.name)) out.push_back(std::move(p));
  return out;
}

}  // namespace

std::vector<Diagnostic> Grammar::validate() const {
  auto problems = structural_problems(*this);
  if (!problems.empty()) return problems;
  try {
    compile(Lang::ref(start), resolver());
  } catch (const Error& e) {
    return e.diagnostics();
  }
  return {};
}

Grammar grammar_of(const std::string& name, const Lang& body, const std::vector<Provenance>& origin) {
  Grammar g;
  g.start = name;
  std::vector<Production> hoisted;
  hoisted.push_back({name, Lang(), origin});
  Lang root = hoist(body, hoisted, origin);
  hoisted.front().body = root;
  g.productions = display_order(name, std::move(hoisted));
  return g;
}

Grammar to_grammar(const LanguageModel& model, Style style) {
  std::vector<Production> productions;
  productions.push_back({model.name, Lang(), model.root_origin});
  Lang root = hoist(model.root, productions, model.root_origin);
  productions.front().body = root;

  std::set<std::string> blocked;
  std::map<std::string, std::vector<Provenance>> set_origin;
  for (const auto& set : named_sets()) {
    const Production* existing = nullptr;
    for (const auto& p : productions)
      if (p.name == set.name) existing = &p;
    if (existing && !(existing->body == Lang::cls(chars::of(set.members)))) blocked.insert(set.name);
  }
  for (auto& p : productions) {
    if (const NamedSet* own = p.body.kind() == LangKind::Class ? named_set_for(p.body.chars()) : nullptr;
        own && own->name == p.name)
      continue;
    std::set<std::string> used;
    p.body = name_sets(p.body, used, blocked);
    for (const auto& u : used) {
      auto& o = set_origin[u];
      for (const auto& w : p.origin)
        if (std::find(o.begin(), o.end(), w) == o.end()) o.push_back(w);
    }
  }
  for (const auto& [name, origin] : set_origin) {
    auto it = std::find_if(productions.begin(), productions.end(), [&](const auto& p) { return p.name == name; });
    if (it != productions.end()) continue;
    const NamedSet* set = nullptr;
    for (const auto& s : named_sets())
      if (s.name == name) set = &s;
    productions.push_back({name, Lang::cls(chars::of(set->members)), origin});
  }

  if (style == Style::Recursive)
    if (auto rec = right_recursive(model.name, productions.front().body)) productions.front().body = *rec;

  Grammar g;
  g.start = model.name;
  g.productions = display_order(model.name, std::move(productions));
  return g;
}

Dfa compile_dfa(const Grammar& g) {
  auto problems = structural_problems(g);
  if (!problems.empty()) throw GrammarError(std::move(problems));
  return compile(Lang::ref(g.start), g.resolver());
}

Equivalence compare(const Dfa& a, const Dfa& b) {
  Equivalence out;
  if (adhoc::equivalent(a, b)) return out;
  out.equal = false;
  out.witness = distinguishing_witness(a, b);
  out.witness_in_first = out.witness && a.member(*out.witness);
  return out;
}

Equivalence equivalent(const Grammar& a, const Grammar& b) { return compare(compile_dfa(a), compile_dfa(b)); }

Membership member(const Dfa& d, std::string_view w) {
  Membership out;
  if (!chars::is_ascii(w)) {
    out.diagnostics.push_back({DiagKind::Note, Provenance{"<input>"}, "input contains non-ASCII characters"});
    return out;
  }
  out.member = d.member(w);
  return out;
}

std::vector<std::string> enumerate_shortest(const Grammar& g, std::size_t k) {
  return enumerate_members(compile_dfa(g), k);
}

// ---------------------------------------------------------------------------
// Generation

namespace {

constexpr int kInfinite = std::numeric_limits<int>::max() / 4;

class Generator {
 public:
  Generator(const Grammar& g, std::uint64_t seed, int max_rep) : g_(g), rng_(seed), max_rep_(max_rep) {
    for (const auto& p : g.productions) production_height_[p.name] = kInfinite;
    // Least fixed point of derivation heights.
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& p : g.productions) {
        int h = height(p.body, false);
        if (h < production_height_[p.name]) {
          production_height_[p.name] = h;
          changed = true;
        }
      }
    }
  }

  bool empty() const { return production_height_.at(g_.start) >= kInfinite; }

  std::string sentence() {
    std::string out;
    active_.clear();
    emit(Lang::ref(g_.start), false, out);
    return out;
  }

 private:
  int height(const Lang& lang, bool cached) {
    if (cached) {
      auto it = cache_.find(lang.id());
      if (it != cache_.end()) return it->second;
    }
    int h = kInfinite;
    switch (lang.kind()) {
      case LangKind::Empty: break;
      case LangKind::Epsilon:
      case LangKind::Literal: h = 0; break;
      case LangKind::Class: h = lang.chars().any() ? 0 : kInfinite; break;
      case LangKind::Concat:
        h = 0;
        for (const auto& i : lang.items()) h = std::max(h, height(i, cached));
        break;
      case LangKind::Union:
        for (const auto& i : lang.items()) h = std::min(h, height(i, cached));
        break;
      case LangKind::Star:
      case LangKind::Optional: h = 0; break;
      case LangKind::Plus: h = height(lang.item(), cached); break;
      case LangKind::Repeat: h = lang.count() == 0 ? 0 : height(lang.item(), cached); break;
      case LangKind::Ref: {
        int inner = lang.definition() ? height(*lang.definition(), cached) : production_height_.at(lang.text());
        h = inner >= kInfinite ? kInfinite : inner + 1;
        break;
      }
    }
    if (cached) {
      pinned_.push_back(lang);
      cache_[lang.id()] = h;
    }
    return h;
  }

  bool productive(const Lang& lang) { return height(lang, true) < kInfinite; }

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  int repetitions(int lo, bool forced) {
    int n = lo;
    if (forced) return n;
    while (n < max_rep_ && rng_() % 2 == 0) ++n;
    return n;
  }

  void emit(const Lang& lang, bool forced, std::string& out) {
    switch (lang.kind()) {
      case LangKind::Empty: return;
      case LangKind::Epsilon: return;
      case LangKind::Literal: out += lang.text(); return;
      case LangKind::Class: {
        std::string members = chars::members(lang.chars());
        out.push_back(members[pick(members.size())]);
        return;
      }
      case LangKind::Concat:
        for (const auto& i : lang.items()) emit(i, forced, out);
        return;
      case LangKind::Union: {
        std::vector<const Lang*> choices;
        int best = kInfinite;
        if (forced)
          for (const auto& i : lang.items()) best = std::min(best, height(i, true));
        for (const auto& i : lang.items()) {
          int h = height(i, true);
          if (h < kInfinite && (!forced || h == best)) choices.push_back(&i);
        }
        emit(*choices[pick(choices.size())], forced, out);
        return;
      }
      case LangKind::Star:
      case LangKind::Optional: {
        if (!productive(lang.item())) return;
        int limit = lang.kind() == LangKind::Optional ? 1 : max_rep_;
        int n = 0;
        if (!forced)
          while (n < limit && rng_() % 2 == 0) ++n;
        for (int i = 0; i < n; ++i) emit(lang.item(), forced, out);
        return;
      }
      case LangKind::Plus: {
        int n = repetitions(1, forced);
        for (int i = 0; i < n; ++i) emit(lang.item(), forced, out);
        return;
      }
      case LangKind::Repeat:
        for (int i = 0; i < lang.count(); ++i) emit(lang.item(), forced, out);
        return;
      case LangKind::Ref: {
        const Lang* body = lang.definition();
        if (!body) body = &g_.find(lang.text())->body;
        int& depth = active_[lang.text()];
        ++depth;
        emit(*body, forced || depth > max_rep_, out);
        --depth;
        return;
      }
    }
  }

  const Grammar& g_;
  std::mt19937_64 rng_;
  int max_rep_;
  std::map<std::string, int> production_height_;
  std::unordered_map<const void*, int> cache_;
  std::vector<Lang> pinned_;
  std::map<std::string, int> active_;
};

}  // namespace

std::vector<std::string> generate(const Grammar& g, std::uint64_t seed, int max_rep, std::size_t count) {
  auto problems = g.validate();
  if (!problems.empty()) throw GrammarError(std::move(problems));
  if (max_rep < 1) throw GrammarError(Provenance{"<grammar>"}, "max_rep must be at least 1");
  Generator gen(g, seed, max_rep);
  if (gen.empty()) throw GrammarError(Provenance{"<grammar>"}, "language is empty");
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen.sentence());
  return out;
}

}  // namespace adhoc
