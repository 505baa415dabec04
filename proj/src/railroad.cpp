#include <algorithm>
#include <string>
#include <vector>

#include "adhoc/grammar.hpp"
#include "adhoc/models.hpp"

// Railroad diagrams on an integer grid: sequences run left to right,
// alternatives stack downward, optional parts get a bypass above and
// repetition a loop-back below. The same grammar always yields the same bytes.
namespace adhoc {

namespace {

constexpr int kCharWidth = 8;
constexpr int kBoxHeight = 24;
constexpr int kGap = 10;
constexpr int kRail = 20;

struct Box {
  int width = 0;
  int up = 0;    // extent above the baseline
  int down = 0;  // extent below the baseline
  std::string svg;
};

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

int glyphs(std::string_view text) {
  int n = 0;
  for (char c : text)
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  return n;
}

std::string translate(int x, int y, const std::string& inner) {
  return "<g transform=\"translate(" + std::to_string(x) + " " + std::to_string(y) + ")\">" + inner + "</g>";
}

std::string path(const std::string& d) { return "<path d=\"" + d + "\"/>"; }

Box label_box(const std::string& label, bool terminal) {
  Box b;
  b.width = glyphs(label) * kCharWidth + 2 * kGap;
  b.up = kBoxHeight / 2;
  b.down = kBoxHeight / 2;
  std::string radius = terminal ? " rx=\"10\"" : "";
  b.svg = "<rect class=\"" + std::string(terminal ? "terminal" : "nonterminal") + "\" x=\"0\" y=\"" +
          std::to_string(-b.up) + "\" width=\"" + std::to_string(b.width) + "\" height=\"" +
          std::to_string(kBoxHeight) + "\"" + radius + "/>" + "<text x=\"" + std::to_string(b.width / 2) +
          "\" y=\"4\">" + xml_escape(label) + "</text>";
  return b;
}

Box line(int width) {
  Box b;
  b.width = width;
  b.svg = path("M0 0h" + std::to_string(width));
  return b;
}

Box sequence(const std::vector<Box>& items) {
  Box b;
  int x = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) {
      b.svg += translate(x, 0, path("M0 0h" + std::to_string(kGap)));
      x += kGap;
    }
    b.svg += translate(x, 0, items[i].svg);
    x += items[i].width;
    b.up = std::max(b.up, items[i].up);
    b.down = std::max(b.down, items[i].down);
  }
  b.width = x;
  return b;
}

Box choice(const std::vector<Box>& items) {
  Box b;
  int inner = 0;
  for (const auto& i : items) inner = std::max(inner, i.width);
  b.width = inner + 2 * kRail;
  b.up = items.front().up;
  int y = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) y += items[i - 1].down + kGap + items[i].up;
    const auto& item = items[i];
    std::string in = "M0 0h" + std::to_string(kRail / 2) + "v" + std::to_string(y) + "h" + std::to_string(kRail / 2);
    std::string out = "M" + std::to_string(kRail + item.width) + " " + std::to_string(y) + "h" +
                      std::to_string(inner - item.width + kRail / 2) + "v" + std::to_string(-y) + "h" +
                      std::to_string(kRail / 2);
    b.svg += path(in) + translate(kRail, y, item.svg) + path(out);
  }
  b.down = y + items.back().down;
  return b;
}

Box bypass(Box inner) {
  Box b;
  b.width = inner.width + 2 * kRail;
  int rise = inner.up + kGap;
  b.up = rise + 2;
  b.down = inner.down;
  b.svg = path("M0 0h" + std::to_string(kRail)) + translate(kRail, 0, inner.svg) +
          path("M" + std::to_string(kRail + inner.width) + " 0h" + std::to_string(kRail)) +
          path("M0 0h" + std::to_string(kRail / 2) + "v" + std::to_string(-rise) + "h" +
               std::to_string(inner.width + kRail) + "v" + std::to_string(rise) + "h" + std::to_string(kRail / 2));
  return b;
}

Box loop(Box inner, bool optional, const std::string& note) {
  Box b = optional ? bypass(inner) : Box{};
  if (!optional) {
    b.width = inner.width + 2 * kRail;
    b.up = inner.up;
    b.down = inner.down;
    b.svg = path("M0 0h" + std::to_string(kRail)) + translate(kRail, 0, inner.svg) +
            path("M" + std::to_string(kRail + inner.width) + " 0h" + std::to_string(kRail));
  }
  int drop = inner.down + kGap;
  b.svg += path("M" + std::to_string(kRail + inner.width) + " 0h" + std::to_string(kRail / 2) + "v" +
                std::to_string(drop) + "h" + std::to_string(-(inner.width + kRail)) + "v" + std::to_string(-drop) +
                "h" + std::to_string(kRail / 2));
  b.down = drop + 2;
  if (!note.empty()) {
    b.svg += "<text class=\"note\" x=\"" + std::to_string(b.width / 2) + "\" y=\"" + std::to_string(drop + 14) +
             "\">" + xml_escape(note) + "</text>";
    b.down = drop + 18;
  }
  return b;
}

Box layout(const Lang& lang) {
  switch (lang.kind()) {
    case LangKind::Empty: return label_box(ebnf_body(lang), true);
    case LangKind::Epsilon: return line(kRail);
    case LangKind::Class:
    case LangKind::Literal: return label_box(ebnf_body(lang), true);
    case LangKind::Ref: return label_box(lang.text(), false);
    case LangKind::Concat: {
      std::vector<Box> items;
      for (const auto& i : lang.items()) items.push_back(layout(i));
      return sequence(items);
    }
    case LangKind::Union: {
      std::vector<Box> items;
      for (const auto& i : lang.items()) items.push_back(layout(i));
      return choice(items);
    }
    case LangKind::Optional: return bypass(layout(lang.item()));
    case LangKind::Star: return loop(layout(lang.item()), true, "");
    case LangKind::Plus: return loop(layout(lang.item()), false, "");
    case LangKind::Repeat:
      return loop(layout(lang.item()), false, std::to_string(lang.count()) + "\xC3\x97");  // k×
  }
  return line(kRail);
}

}  // namespace

std::string to_railroad_svg(const Grammar& g) {
  std::string body;
  int y = kGap;
  int width = 0;
  for (const auto& p : g.productions) {
    Box diagram;
    const NamedSet* set = p.body.kind() == LangKind::Class ? named_set_for(p.body.chars()) : nullptr;
    if (set && set->name == p.name) {
      std::vector<Box> items;
      for (char c : set->members) items.push_back(label_box(ebnf_body(Lang::literal(std::string(1, c))), true));
      diagram = choice(items);
    } else {
      diagram = layout(p.body);
    }
    int baseline = y + 20 + diagram.up;
    std::string group = "<g class=\"production\" id=\"" + xml_escape(p.name) + "\">";
    group += "<text class=\"name\" x=\"" + std::to_string(kGap) + "\" y=\"" + std::to_string(y + 14) + "\">" +
             xml_escape(p.name) + "</text>";
    std::string rails = path("M0 -8v16") + path("M0 0h" + std::to_string(kRail)) +
                        translate(kRail, 0, diagram.svg) +
                        path("M" + std::to_string(kRail + diagram.width) + " 0h" + std::to_string(kRail)) +
                        path("M" + std::to_string(2 * kRail + diagram.width) + " -8v16");
    group += translate(kGap, baseline, rails) + "</g>\n";
    body += group;
    width = std::max(width, diagram.width + 2 * kRail + 2 * kGap);
    y = baseline + diagram.down + 2 * kGap;
  }
  std::string w = std::to_string(std::max(width, 100));
  std::string h = std::to_string(y);
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" + h + "\" viewBox=\"0 0 " + w +
         " " + h + "\">\n"
         "<style>path{fill:none;stroke:#222;stroke-width:1.5}"
         "rect{fill:#f4f4ee;stroke:#222;stroke-width:1.5}"
         "text{font-family:monospace;font-size:13px;text-anchor:middle}"
         "text.name{font-weight:bold;text-anchor:start}text.note{font-size:11px}</style>\n" +
         body + "</svg>\n";
}

}  // namespace adhoc
