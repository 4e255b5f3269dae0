#include "lexitrend/path_expr.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "lexitrend/error.hpp"
#include "lexitrend/html.hpp"

namespace lexitrend::path_expr {

namespace {

[[noreturn]] void fail(std::string_view expr, std::size_t at, const std::string& what) {
  throw Error(ErrorCode::MalformedPathExpression,
              "\"" + std::string(expr) + "\" at offset " + std::to_string(at) + ": " + what);
}

bool is_name_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-';
}

void collect_descendants(const html::Node& node, std::vector<const html::Node*>& out) {
  for (const auto& child : node.children) {
    if (child->type == html::Node::Type::Element) {
      out.push_back(child.get());
      collect_descendants(*child, out);
    }
  }
}

bool matches_step(const html::Node& node, const PathExpr::Step& step) {
  if (step.name != "*" && node.tag != step.name) return false;
  for (const auto& test : step.attr_tests) {
    const std::string* value = node.attribute(test.name);
    if (value == nullptr || *value != test.value) return false;
  }
  return true;
}

}  // namespace

PathExpr PathExpr::parse(std::string_view text) {
  PathExpr expr;
  expr.text_ = std::string(text);
  std::size_t pos = 0;
  if (text.empty() || text[0] != '/') {
    fail(text, 0, "expected '/' or '//'");
  }
  while (pos < text.size()) {
    Step step;
    ++pos;  // '/'
    if (pos < text.size() && text[pos] == '/') {
      step.descendant = true;
      ++pos;
    }
    if (pos >= text.size()) fail(text, pos, "expected a name test");
    if (text[pos] == '*') {
      step.name = "*";
      ++pos;
    } else if (is_name_start(text[pos])) {
      std::size_t start = pos;
      while (pos < text.size() && is_name_char(text[pos])) ++pos;
      step.name = std::string(text.substr(start, pos - start));
      for (char& c : step.name) {
        if (c >= 'A' && c <= 'Z') c += 0x20;
      }
    } else {
      fail(text, pos, "expected a name test");
    }
    while (pos < text.size() && text[pos] == '[') {
      ++pos;
      if (pos >= text.size()) fail(text, pos, "unterminated predicate");
      if (text[pos] == '@') {
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && is_name_char(text[pos])) ++pos;
        if (pos == start) fail(text, pos, "expected an attribute name");
        AttrTest test;
        test.name = std::string(text.substr(start, pos - start));
        for (char& c : test.name) {
          if (c >= 'A' && c <= 'Z') c += 0x20;
        }
        if (pos >= text.size() || text[pos] != '=') fail(text, pos, "expected '='");
        ++pos;
        if (pos >= text.size() || (text[pos] != '\'' && text[pos] != '"')) {
          fail(text, pos, "expected a quoted value");
        }
        char quote = text[pos];
        ++pos;
        std::size_t value_start = pos;
        while (pos < text.size() && text[pos] != quote) ++pos;
        if (pos >= text.size()) fail(text, pos, "unterminated string");
        test.value = std::string(text.substr(value_start, pos - value_start));
        ++pos;
        step.attr_tests.push_back(std::move(test));
      } else if (text[pos] >= '1' && text[pos] <= '9') {
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        int value = 0;
        std::from_chars(text.data() + start, text.data() + pos, value);
        if (step.position != 0) fail(text, start, "duplicate positional predicate");
        step.position = value;
      } else {
        fail(text, pos, "expected '@name=...' or a position");
      }
      if (pos >= text.size() || text[pos] != ']') fail(text, pos, "expected ']'");
      ++pos;
    }
    expr.steps_.push_back(std::move(step));
    if (pos < text.size() && text[pos] != '/') {
      fail(text, pos, "unexpected character");
    }
  }
  if (expr.steps_.empty()) fail(text, 0, "empty expression");
  return expr;
}

std::vector<const html::Node*> PathExpr::select(const html::Document& doc) const {
  std::vector<const html::Node*> contexts = {doc.root.get()};
  for (const Step& step : steps_) {
    std::vector<const html::Node*> matched;
    std::set<int> seen;
    for (const html::Node* context : contexts) {
      std::vector<const html::Node*> candidates;
      if (step.descendant) {
        collect_descendants(*context, candidates);
      } else {
        for (const auto& child : context->children) {
          if (child->type == html::Node::Type::Element) candidates.push_back(child.get());
        }
      }
      std::vector<const html::Node*> local;
      for (const html::Node* candidate : candidates) {
        if (matches_step(*candidate, step)) local.push_back(candidate);
      }
      if (step.position != 0) {
        std::size_t index = static_cast<std::size_t>(step.position);
        local = (index <= local.size())
                    ? std::vector<const html::Node*>{local[index - 1]}
                    : std::vector<const html::Node*>{};
      }
      for (const html::Node* node : local) {
        if (seen.insert(node->order).second) matched.push_back(node);
      }
    }
    std::sort(matched.begin(), matched.end(),
              [](const html::Node* a, const html::Node* b) { return a->order < b->order; });
    contexts = std::move(matched);
    if (contexts.empty()) break;
  }
  return contexts;
}

}  // namespace lexitrend::path_expr
