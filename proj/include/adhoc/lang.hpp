#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "adhoc/charset.hpp"
#include "adhoc/provenance.hpp"

namespace adhoc {

enum class LangKind : std::uint8_t {
  Empty,
  Epsilon,
  Class,
  Literal,
  Concat,
  Union,
  Star,
  Plus,
  Optional,
  Repeat,
  Ref,
};

// Symbolic language description: an immutable regex tree over ASCII
// character classes, literals, and named sublanguages. A Ref either embeds its
// definition (inference output) or names a production resolved by a Grammar.
//
// The factory functions normalize lightly (flattening, unit and zero
// elements, duplicate alternatives) so equal languages built the same way
// share a shape; they never change the denoted language.
class Lang {
 public:
  Lang();  // Empty

  static Lang empty();
  static Lang epsilon();
  static Lang cls(const CharSet& set);
  static Lang chr(char c);
  static Lang literal(std::string text);
  static Lang concat(std::vector<Lang> items);
  static Lang alt(std::vector<Lang> items);
  static Lang star(const Lang& item);
  static Lang plus(const Lang& item);
  static Lang opt(const Lang& item);
  static Lang repeat(const Lang& item, int count);
  static Lang ref(std::string name);
  static Lang ref(std::string name, const Lang& definition, std::vector<Provenance> origin = {});

  // Sigma*: every ASCII string.
  static Lang anything();

  LangKind kind() const;
  const CharSet& chars() const;         // Class
  const std::string& text() const;      // Literal text or Ref name
  std::span<const Lang> items() const;  // Concat/Union children, or the single operand
  const Lang& item() const;             // first child
  int count() const;                    // Repeat
  const Lang* definition() const;       // embedded Ref definition, or nullptr
  const std::vector<Provenance>& origin() const;

  bool is_empty_node() const { return kind() == LangKind::Empty; }
  bool is_anything() const;

  // Identity of the shared node, for caches.
  const void* id() const { return node_.get(); }

  // Structural equality; provenance is ignored.
  friend bool operator==(const Lang& a, const Lang& b);

  struct Node;

 private:
  explicit Lang(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Compact regex-like text for debugging and test messages.
std::string debug_string(const Lang& lang);

// Number of nodes, counting embedded definitions once per occurrence.
std::size_t node_count(const Lang& lang);

}  // namespace adhoc
