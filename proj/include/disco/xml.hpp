#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "disco/errors.hpp"

namespace disco::xml {

struct ParseError : Error {
  ParseError(const std::string& what, size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
  size_t offset;
};

// Element tree for the small XML dialect the wire protocol needs: elements,
// attributes, character data, comments, numeric/named entities. No DTDs,
// no processing instructions beyond the optional <?xml?> prolog, no mixed
// content semantics (text and child elements are both kept, but the wire
// messages never mix them).
struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;  // document order
  std::vector<Element> children;
  std::string text;  // concatenated character data, entities decoded

  const std::string* attr(std::string_view name) const;
  const Element* child(std::string_view name) const;
  std::vector<const Element*> children_named(std::string_view name) const;

  Element& add_child(std::string name);
  Element& set_attr(std::string name, std::string value);
  Element& set_text(std::string t);
};

// Parses one document; throws ParseError on anything malformed, including
// trailing content after the root element.
Element parse(std::string_view input);

// Compact single-line serialization. Text and attribute values are escaped.
std::string serialize(const Element& root);

// Canonical byte form used for golden comparisons: attributes sorted by
// name, whitespace-only text dropped, remaining text trimmed at both ends.
std::string canonical(const Element& root);

// Structural equality under the same normalization as canonical().
bool tree_equal(const Element& a, const Element& b);

std::string escape_text(std::string_view s);
std::string escape_attr(std::string_view s);

}  // namespace disco::xml
