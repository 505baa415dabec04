#include "adhoc/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

namespace adhoc {

namespace {

// ---------------------------------------------------------------------------
// Thompson NFA

struct Nfa {
  std::vector<std::vector<std::pair<CharSet, int>>> moves;
  std::vector<std::vector<int>> eps;
  int start = 0;
  int accept = 0;

  int add() {
    moves.emplace_back();
    eps.emplace_back();
    return static_cast<int>(moves.size()) - 1;
  }
};

class NfaBuilder {
 public:
  explicit NfaBuilder(const RefResolver& resolve) : resolve_(resolve) {}

  Nfa build(const Lang& lang) {
    nfa_.start = nfa_.add();
    nfa_.accept = build(lang, nfa_.start, 0);
    return std::move(nfa_);
  }

 private:
  struct Frame {
    std::string name;
    int entry;
  };

  // Builds `lang` starting at `from`; returns the fragment's exit state.
  // Positions are in tail position of every active frame at index >= tail.
  int build(const Lang& lang, int from, std::size_t tail) {
    switch (lang.kind()) {
      case LangKind::Empty: return nfa_.add();
      case LangKind::Epsilon: {
        int end = nfa_.add();
        nfa_.eps[from].push_back(end);
        return end;
      }
      case LangKind::Class: {
        int end = nfa_.add();
        nfa_.moves[from].emplace_back(lang.chars(), end);
        return end;
      }
      case LangKind::Literal: {
        int at = from;
        for (char c : lang.text()) {
          int end = nfa_.add();
          nfa_.moves[at].emplace_back(chars::of(std::string_view(&c, 1)), end);
          at = end;
        }
        return at;
      }
      case LangKind::Concat: {
        int at = from;
        auto items = lang.items();
        for (std::size_t i = 0; i < items.size(); ++i)
          at = build(items[i], at, i + 1 == items.size() ? tail : frames_.size());
        return at;
      }
      case LangKind::Union: {
        int end = nfa_.add();
        for (const auto& item : lang.items()) {
          int entry = nfa_.add();
          nfa_.eps[from].push_back(entry);
          nfa_.eps[build(item, entry, tail)].push_back(end);
        }
        return end;
      }
      case LangKind::Star: {
        int loop = nfa_.add();
        nfa_.eps[from].push_back(loop);
        int body = build(lang.item(), loop, frames_.size());
        nfa_.eps[body].push_back(loop);
        int end = nfa_.add();
        nfa_.eps[loop].push_back(end);
        return end;
      }
      case LangKind::Plus: {
        int loop = nfa_.add();
        nfa_.eps[from].push_back(loop);
        int body = build(lang.item(), loop, frames_.size());
        nfa_.eps[body].push_back(loop);
        int end = nfa_.add();
        nfa_.eps[body].push_back(end);
        return end;
      }
      case LangKind::Optional: {
        int entry = nfa_.add();
        nfa_.eps[from].push_back(entry);
        int body = build(lang.item(), entry, tail);
        int end = nfa_.add();
        nfa_.eps[body].push_back(end);
        nfa_.eps[from].push_back(end);
        return end;
      }
      case LangKind::Repeat: {
        int at = from;
        for (int i = 0; i < lang.count(); ++i)
          at = build(lang.item(), at, i + 1 == lang.count() ? tail : frames_.size());
        return at;
      }
      case LangKind::Ref: return build_ref(lang, from, tail);
    }
    return nfa_.add();
  }

  int build_ref(const Lang& ref, int from, std::size_t tail) {
    if (const Lang* def = ref.definition()) return build(*def, from, tail);
    for (std::size_t i = 0; i < frames_.size(); ++i) {
      if (frames_[i].name != ref.text()) continue;
      if (tail > i)
        throw GrammarError(Provenance{"<grammar>"},
                           "nonterminal '" + ref.text() +
                               "' recurses outside tail position; the language may not be regular");
      nfa_.eps[from].push_back(frames_[i].entry);
      return nfa_.add();  // unreachable exit: the recursive path ends at the frame's exit
    }
    const Lang* def = resolve_ ? resolve_(ref.text()) : nullptr;
    if (!def)
      throw GrammarError(Provenance{"<grammar>"}, "undefined nonterminal '" + ref.text() + "'");
    int entry = nfa_.add();
    nfa_.eps[from].push_back(entry);
    frames_.push_back(Frame{ref.text(), entry});
    int end = build(*def, entry, std::min(tail, frames_.size() - 1));
    frames_.pop_back();
    return end;
  }

  const RefResolver& resolve_;
  Nfa nfa_;
  std::vector<Frame> frames_;
};

// Partition of the alphabet into classes that no edge label distinguishes.
std::vector<CharSet> atoms_of(const Nfa& nfa) {
  std::vector<CharSet> labels;
  for (const auto& moves : nfa.moves)
    for (const auto& [set, target] : moves)
      if (std::find(labels.begin(), labels.end(), set) == labels.end()) labels.push_back(set);
  std::vector<CharSet> atoms{chars::all()};
  for (const auto& label : labels) {
    std::vector<CharSet> refined;
    for (const auto& atom : atoms) {
      CharSet in = atom & label;
      CharSet out = atom & ~label;
      if (in.any()) refined.push_back(in);
      if (out.any()) refined.push_back(out);
    }
    atoms = std::move(refined);
  }
  return atoms;
}

int first_member(const CharSet& set) {
  for (int c = 0; c < kAlphabetSize; ++c)
    if (set.test(c)) return c;
  return -1;
}

Dfa determinize(const Nfa& nfa) {
  std::vector<CharSet> atoms = atoms_of(nfa);
  std::vector<int> reps;
  for (const auto& atom : atoms) reps.push_back(first_member(atom));

  std::vector<int> mark(nfa.moves.size(), -1);
  int stamp = 0;
  auto closure = [&](std::vector<int> seeds) {
    ++stamp;
    std::vector<int> out;
    while (!seeds.empty()) {
      int s = seeds.back();
      seeds.pop_back();
      if (mark[s] == stamp) continue;
      mark[s] = stamp;
      out.push_back(s);
      for (int t : nfa.eps[s]) seeds.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> sets;
  std::vector<Dfa::Row> rows;
  std::vector<bool> accepting;
  auto intern = [&](std::vector<int> set) {
    auto [it, inserted] = ids.emplace(set, static_cast<int>(sets.size()));
    if (inserted) {
      accepting.push_back(std::binary_search(set.begin(), set.end(), nfa.accept));
      sets.push_back(std::move(set));
      rows.emplace_back();
    }
    return it->second;
  };

  intern(closure({nfa.start}));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      std::vector<int> targets;
      for (int s : sets[i])
        for (const auto& [set, target] : nfa.moves[s])
          if (set.test(reps[a])) targets.push_back(target);
      int next = intern(closure(std::move(targets)));
      for (int c = 0; c < kAlphabetSize; ++c)
        if (atoms[a].test(c)) rows[i][c] = next;
    }
  }
  return Dfa(std::move(rows), std::move(accepting), 0);
}

// Renumbers reachable states breadth-first from the start state.
Dfa canonical(const std::vector<Dfa::Row>& rows, const std::vector<bool>& accepting, int start) {
  std::vector<int> order(rows.size(), -1);
  std::vector<int> queue{start};
  order[start] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (int c = 0; c < kAlphabetSize; ++c) {
      int t = rows[queue[i]][c];
      if (order[t] < 0) {
        order[t] = static_cast<int>(queue.size());
        queue.push_back(t);
      }
    }
  }
  std::vector<Dfa::Row> out_rows(queue.size());
  std::vector<bool> out_accepting(queue.size());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    out_accepting[i] = accepting[queue[i]];
    for (int c = 0; c < kAlphabetSize; ++c) out_rows[i][c] = order[rows[queue[i]][c]];
  }
  return Dfa(std::move(out_rows), std::move(out_accepting), 0);
}

}  // namespace

// ---------------------------------------------------------------------------
// Dfa

Dfa::Dfa() : rows_(1), accepting_(1, false), start_(0) { rows_[0].fill(0); }

Dfa::Dfa(std::vector<Row> rows, std::vector<bool> accepting, int start)
    : rows_(std::move(rows)), accepting_(std::move(accepting)), start_(start) {}

bool Dfa::member(std::string_view w) const {
  int state = start_;
  for (char c : w) {
    auto code = static_cast<unsigned char>(c);
    if (code >= kAlphabetSize) return false;
    state = rows_[state][code];
  }
  return accepting_[state];
}

bool Dfa::empty() const { return distance_to_accept()[start_] < 0; }

std::vector<int> Dfa::distance_to_accept() const {
  std::vector<std::vector<int>> preds(size());
  for (std::size_t s = 0; s < size(); ++s) {
    for (int c = 0; c < kAlphabetSize; ++c) {
      auto& p = preds[rows_[s][c]];
      if (p.empty() || p.back() != static_cast<int>(s)) p.push_back(static_cast<int>(s));
    }
  }
  std::vector<int> dist(size(), -1);
  std::deque<int> queue;
  for (std::size_t s = 0; s < size(); ++s) {
    if (accepting_[s]) {
      dist[s] = 0;
      queue.push_back(static_cast<int>(s));
    }
  }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int p : preds[s]) {
      if (dist[p] < 0) {
        dist[p] = dist[s] + 1;
        queue.push_back(p);
      }
    }
  }
  return dist;
}

std::size_t Dfa::live_state_count() const {
  auto dist = distance_to_accept();
  return static_cast<std::size_t>(std::count_if(dist.begin(), dist.end(), [](int d) { return d >= 0; }));
}

Dfa Dfa::complemented() const {
  std::vector<bool> flipped(accepting_.size());
  for (std::size_t i = 0; i < flipped.size(); ++i) flipped[i] = !accepting_[i];
  return Dfa(rows_, std::move(flipped), start_);
}

Dfa Dfa::minimized() const {
  Dfa reach = canonical(rows_, accepting_, start_);
  const int n = static_cast<int>(reach.size());

  // Characters with identical columns are interchangeable.
  std::vector<int> atom_rep;
  {
    std::map<std::vector<int>, int> seen;
    for (int c = 0; c < kAlphabetSize; ++c) {
      std::vector<int> column(n);
      for (int s = 0; s < n; ++s) column[s] = reach.rows_[s][c];
      if (seen.emplace(std::move(column), c).second) atom_rep.push_back(c);
    }
  }
  const int atoms = static_cast<int>(atom_rep.size());

  // inverse[a][t] = states reaching t on atom a
  std::vector<std::vector<std::vector<int>>> inverse(atoms, std::vector<std::vector<int>>(n));
  for (int a = 0; a < atoms; ++a)
    for (int s = 0; s < n; ++s) inverse[a][reach.rows_[s][atom_rep[a]]].push_back(s);

  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(n);
  {
    std::vector<int> acc, rej;
    for (int s = 0; s < n; ++s) (reach.accepting_[s] ? acc : rej).push_back(s);
    for (auto* part : {&acc, &rej}) {
      if (part->empty()) continue;
      for (int s : *part) block_of[s] = static_cast<int>(blocks.size());
      blocks.push_back(*part);
    }
  }

  std::deque<std::pair<int, int>> work;
  if (blocks.size() == 2) {
    int smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
    for (int a = 0; a < atoms; ++a) work.emplace_back(smaller, a);
  }

  std::vector<int> hit(n, 0);
  int stamp = 0;
  while (!work.empty()) {
    auto [splitter, a] = work.front();
    work.pop_front();
    ++stamp;
    std::vector<int> touched_blocks;
    std::vector<int> marked;
    for (int t : blocks[splitter]) {
      for (int p : inverse[a][t]) {
        if (hit[p] == stamp) continue;
        hit[p] = stamp;
        marked.push_back(p);
      }
    }
    std::map<int, std::vector<int>> by_block;
    for (int p : marked) by_block[block_of[p]].push_back(p);
    for (auto& [b, inside] : by_block) {
      if (inside.size() == blocks[b].size()) continue;
      std::vector<int> outside;
      for (int s : blocks[b])
        if (hit[s] != stamp) outside.push_back(s);
      // The block keeps the larger half; the smaller half becomes a new block.
      std::vector<int>& small = inside.size() <= outside.size() ? inside : outside;
      std::vector<int>& large = inside.size() <= outside.size() ? outside : inside;
      int fresh = static_cast<int>(blocks.size());
      for (int s : small) block_of[s] = fresh;
      blocks[b] = large;
      blocks.push_back(small);
      for (int c = 0; c < atoms; ++c) work.emplace_back(fresh, c);
    }
  }

  std::vector<Row> rows(blocks.size());
  std::vector<bool> accepting(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    int s = blocks[b].front();
    accepting[b] = reach.accepting_[s];
    for (int c = 0; c < kAlphabetSize; ++c) rows[b][c] = block_of[reach.rows_[s][c]];
  }
  return canonical(rows, accepting, block_of[reach.start_]);
}

// ---------------------------------------------------------------------------
// Operations

Dfa compile(const Lang& lang, const RefResolver& resolve) {
  NfaBuilder builder(resolve);
  return determinize(builder.build(lang)).minimized();
}

Dfa combine(const Dfa& a, const Dfa& b, SetOp op) {
  const std::size_t nb = b.size();
  std::vector<int> id(a.size() * nb, -1);
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int p, int q) {
    auto& slot = id[static_cast<std::size_t>(p) * nb + q];
    if (slot < 0) {
      slot = static_cast<int>(pairs.size());
      pairs.emplace_back(p, q);
    }
    return slot;
  };
  intern(a.start(), b.start());
  std::vector<Dfa::Row> rows;
  std::vector<bool> accepting;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    Dfa::Row row;
    for (int c = 0; c < kAlphabetSize; ++c) row[c] = intern(a.next(p, c), b.next(q, c));
    rows.push_back(row);
    bool x = a.accepting(p), y = b.accepting(q);
    switch (op) {
      case SetOp::Intersection: accepting.push_back(x && y); break;
      case SetOp::Union: accepting.push_back(x || y); break;
      case SetOp::Difference: accepting.push_back(x && !y); break;
      case SetOp::SymmetricDifference: accepting.push_back(x != y); break;
    }
  }
  return Dfa(std::move(rows), std::move(accepting), 0).minimized();
}

bool equivalent(const Dfa& a, const Dfa& b) {
  const int offset = static_cast<int>(a.size());
  std::vector<int> parent(a.size() + b.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<int, int>> stack{{a.start(), b.start()}};
  parent[find(a.start())] = find(b.start() + offset);
  while (!stack.empty()) {
    auto [p, q] = stack.back();
    stack.pop_back();
    if (a.accepting(p) != b.accepting(q)) return false;
    for (int c = 0; c < kAlphabetSize; ++c) {
      int p2 = a.next(p, c), q2 = b.next(q, c);
      int r1 = find(p2), r2 = find(q2 + offset);
      if (r1 == r2) continue;
      parent[r1] = r2;
      stack.emplace_back(p2, q2);
    }
  }
  return true;
}

std::optional<std::string> distinguishing_witness(const Dfa& a, const Dfa& b) {
  const std::size_t nb = b.size();
  struct Step {
    int prev;
    char c;
    int p, q;
  };
  std::vector<char> seen(a.size() * nb, 0);
  std::vector<Step> steps{{-1, 0, a.start(), b.start()}};
  seen[static_cast<std::size_t>(a.start()) * nb + b.start()] = 1;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    auto [prev, ch, p, q] = steps[i];
    if (a.accepting(p) != b.accepting(q)) {
      std::string w;
      for (int at = static_cast<int>(i); steps[at].prev >= 0; at = steps[at].prev) w.push_back(steps[at].c);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (int c = 0; c < kAlphabetSize; ++c) {
      int p2 = a.next(p, c), q2 = b.next(q, c);
      auto& s = seen[static_cast<std::size_t>(p2) * nb + q2];
      if (s) continue;
      s = 1;
      steps.push_back({static_cast<int>(i), static_cast<char>(c), p2, q2});
    }
  }
  return std::nullopt;
}

bool is_subset(const Dfa& a, const Dfa& b) { return combine(a, b, SetOp::Difference).empty(); }

std::optional<std::string> shortest_member(const Dfa& d) {
  return distinguishing_witness(d, Dfa());
}

std::vector<std::string> enumerate_members(const Dfa& d, std::size_t max_length) {
  auto dist = d.distance_to_accept();
  std::vector<std::string> out;
  std::vector<std::pair<std::string, int>> level{{"", d.start()}};
  for (std::size_t len = 0; len <= max_length && !level.empty(); ++len) {
    std::vector<std::pair<std::string, int>> next_level;
    for (auto& [w, s] : level) {
      if (d.accepting(s)) out.push_back(w);
      if (len == max_length) continue;
      for (int c = 0; c < kAlphabetSize; ++c) {
        int t = d.next(s, c);
        if (dist[t] < 0 || len + 1 + static_cast<std::size_t>(dist[t]) > max_length) continue;
        next_level.emplace_back(w + static_cast<char>(c), t);
      }
    }
    level = std::move(next_level);
  }
  return out;
}

Lang to_lang(const Dfa& input) {
  Dfa d = input.minimized();
  auto dist = d.distance_to_accept();
  if (dist[d.start()] < 0) return Lang::empty();

  // Nodes: live DFA states, then a fresh source and sink.
  std::vector<int> node_of(d.size(), -1);
  int live = 0;
  for (std::size_t s = 0; s < d.size(); ++s)
    if (dist[s] >= 0) node_of[s] = live++;
  const int source = live, sink = live + 1, total = live + 2;

  std::vector<std::map<int, Lang>> out(total), in(total);
  auto put = [&](int from, int to, const Lang& label) {
    auto it = out[from].find(to);
    Lang merged = it == out[from].end() ? label : Lang::alt({it->second, label});
    out[from][to] = merged;
    in[to][from] = merged;
  };
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (node_of[s] < 0) continue;
    std::map<int, CharSet> by_target;
    for (int c = 0; c < kAlphabetSize; ++c) {
      int t = node_of[d.next(static_cast<int>(s), c)];
      if (t >= 0) by_target[t].set(c);
    }
    for (const auto& [t, set] : by_target) {
      Lang label = set.count() == 1 ? Lang::chr(static_cast<char>(first_member(set))) : Lang::cls(set);
      put(node_of[s], t, label);
    }
    if (d.accepting(static_cast<int>(s))) put(node_of[s], sink, Lang::epsilon());
  }
  put(source, node_of[d.start()], Lang::epsilon());

  std::vector<bool> gone(total, false);
  for (int round = 0; round < live; ++round) {
    int pick = -1;
    std::size_t best = 0;
    for (int k = 0; k < live; ++k) {
      if (gone[k]) continue;
      std::size_t degree = in[k].size() + out[k].size();
      if (pick < 0 || degree < best) {
        pick = k;
        best = degree;
      }
    }
    int k = pick;
    Lang loop;
    bool has_loop = false;
    if (auto it = out[k].find(k); it != out[k].end()) {
      loop = Lang::star(it->second);
      has_loop = true;
    }
    std::vector<std::pair<int, Lang>> preds, succs;
    for (const auto& [p, l] : in[k])
      if (p != k) preds.emplace_back(p, l);
    for (const auto& [q, l] : out[k])
      if (q != k) succs.emplace_back(q, l);
    for (const auto& [p, _] : preds) out[p].erase(k);
    for (const auto& [q, _] : succs) in[q].erase(k);
    out[k].clear();
    in[k].clear();
    gone[k] = true;
    for (const auto& [p, lp] : preds) {
      for (const auto& [q, lq] : succs) {
        Lang path = has_loop ? Lang::concat({lp, loop, lq}) : Lang::concat({lp, lq});
        put(p, q, path);
      }
    }
  }
  auto it = out[source].find(sink);
  return it == out[source].end() ? Lang::empty() : it->second;
}

Lang intersect(const Lang& a, const Lang& b) {
  if (a == b) return a;
  if (a.kind() == LangKind::Empty || b.kind() == LangKind::Empty) return Lang::empty();
  if (a.is_anything()) return b;
  if (b.is_anything()) return a;
  Dfa da = compile(a), db = compile(b);
  if (is_subset(da, db)) return a;
  if (is_subset(db, da)) return b;
  Dfa both = combine(da, db, SetOp::Intersection);
  if (both.empty()) return Lang::empty();
  return to_lang(both);
}

}  // namespace adhoc
