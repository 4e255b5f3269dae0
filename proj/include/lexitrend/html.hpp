#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexitrend::html {

// Lenient tag-soup parser: mismatched and unclosed tags are repaired, void
// elements never nest, <p>/<li>/<td>/<tr>/<option> auto-close, script/style
// content is dropped, comments/doctype/CDATA/processing instructions are
// skipped.
struct Node {
  enum class Type { Element, Text };

  Type type = Type::Element;
  std::string tag;   // elements only; lowercase
  std::string text;  // text nodes only; raw (entities not decoded)
  std::vector<std::pair<std::string, std::string>> attributes;  // values decoded
  std::vector<std::unique_ptr<Node>> children;
  Node* parent = nullptr;
  int order = 0;  // preorder document position

  const std::string* attribute(std::string_view name) const;
};

struct Document {
  // Synthetic container above the top-level elements.
  std::unique_ptr<Node> root;
};

// Throws MalformedDocument when the input contains no element at all.
Document parse(std::string_view input);

// Concatenated descendant text in document order, entities decoded and
// whitespace collapsed; script/style/noscript/template subtrees excluded;
// block-level boundaries (p, div, br, li, ...) separate words.
std::string text_content(const Node& node);

}  // namespace lexitrend::html
