#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lexitrend::html {
struct Node;
struct Document;
}  // namespace lexitrend::html

namespace lexitrend::path_expr {

// Supported subset: '/' child and '//' descendant axes, element name tests,
// wildcard '*', attribute equality predicates [@name='value'], and 1-based
// positional predicates [n]. A positional predicate selects the n-th
// remaining match within each context node.
class PathExpr {
 public:
  struct AttrTest {
    std::string name;
    std::string value;
  };

  struct Step {
    bool descendant = false;  // '//' axis
    std::string name;         // "*" for wildcard
    std::vector<AttrTest> attr_tests;
    int position = 0;  // 0 = no positional predicate
  };

  // Throws MalformedPathExpression.
  static PathExpr parse(std::string_view text);

  // Matched element nodes in document order, deduplicated.
  std::vector<const html::Node*> select(const html::Document& doc) const;

  const std::string& text() const { return text_; }
  const std::vector<Step>& steps() const { return steps_; }

 private:
  std::string text_;
  std::vector<Step> steps_;
};

}  // namespace lexitrend::path_expr
