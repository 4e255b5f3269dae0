#include "lexitrend/html.hpp"

#include <array>
#include <set>

#include "lexitrend/entities.hpp"
#include "lexitrend/error.hpp"
#include "lexitrend/utf8.hpp"

namespace lexitrend::html {

namespace {

bool is_void_element(std::string_view tag) {
  static const std::set<std::string_view> kVoid = {
      "area", "base",  "br",   "col",  "embed",  "hr",    "img", "input",
      "link", "meta",  "param", "source", "track", "wbr",
  };
  return kVoid.count(tag) > 0;
}

bool is_raw_text_element(std::string_view tag) {
  return tag == "script" || tag == "style";
}

bool closes_open_paragraph(std::string_view tag) {
  static const std::set<std::string_view> kBlock = {
      "address", "article", "aside",  "blockquote", "div",    "dl",     "fieldset",
      "figure",  "footer",  "form",   "h1",         "h2",     "h3",     "h4",
      "h5",      "h6",      "header", "hr",         "main",   "nav",    "ol",
      "p",       "pre",     "section", "table",     "ul",     "li",
  };
  return kBlock.count(tag) > 0;
}

bool is_text_excluded(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "noscript" || tag == "template";
}

// Elements whose boundaries render as whitespace; keeps words from gluing
// across paragraphs and line breaks.
bool is_block_boundary(std::string_view tag) {
  static const std::set<std::string_view> kBoundary = {
      "address", "article", "aside",  "blockquote", "br",      "div",    "dl",
      "dd",      "dt",      "fieldset", "figcaption", "figure", "footer", "form",
      "h1",      "h2",      "h3",     "h4",         "h5",      "h6",     "header",
      "hr",      "li",      "main",   "nav",        "ol",      "p",      "pre",
      "section", "table",   "td",     "th",         "tr",      "ul",
  };
  return kBoundary.count(tag) > 0;
}

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 0x20) : c; }

class Parser {
 public:
  explicit Parser(std::string_view input) : input_(input) {}

  Document run() {
    Document doc;
    doc.root = std::make_unique<Node>();
    doc.root->order = next_order_++;
    stack_.push_back(doc.root.get());
    while (pos_ < input_.size()) {
      if (input_[pos_] == '<') {
        handle_markup();
      } else {
        handle_text();
      }
    }
    if (!saw_element_) {
      throw Error(ErrorCode::MalformedDocument, "input contains no elements");
    }
    return doc;
  }

 private:
  void handle_text() {
    std::size_t start = pos_;
    while (pos_ < input_.size() && input_[pos_] != '<') ++pos_;
    append_text(input_.substr(start, pos_ - start));
  }

  void append_text(std::string_view text) {
    if (text.empty()) return;
    Node* parent = stack_.back();
    auto node = std::make_unique<Node>();
    node->type = Node::Type::Text;
    node->text = std::string(text);
    node->parent = parent;
    node->order = next_order_++;
    parent->children.push_back(std::move(node));
  }

  void handle_markup() {
    // pos_ points at '<'
    if (pos_ + 1 >= input_.size()) {
      append_text("<");
      ++pos_;
      return;
    }
    char c = input_[pos_ + 1];
    if (c == '!') {
      skip_declaration();
    } else if (c == '?') {
      skip_until('>');
    } else if (c == '/') {
      handle_end_tag();
    } else if (is_ascii_alpha(c)) {
      handle_start_tag();
    } else {
      append_text("<");
      ++pos_;
    }
  }

  void skip_declaration() {
    if (input_.compare(pos_, 4, "<!--") == 0) {
      std::size_t end = input_.find("-->", pos_ + 4);
      pos_ = (end == std::string_view::npos) ? input_.size() : end + 3;
    } else if (input_.compare(pos_, 9, "<![CDATA[") == 0) {
      std::size_t end = input_.find("]]>", pos_ + 9);
      pos_ = (end == std::string_view::npos) ? input_.size() : end + 3;
    } else {
      skip_until('>');
    }
  }

  void skip_until(char terminator) {
    std::size_t end = input_.find(terminator, pos_);
    pos_ = (end == std::string_view::npos) ? input_.size() : end + 1;
  }

  std::string read_tag_name() {
    std::string name;
    while (pos_ < input_.size()) {
      char c = input_[pos_];
      bool name_char = is_ascii_alpha(c) || (c >= '0' && c <= '9') || c == '-' || c == '_' || c == ':';
      if (!name_char) break;
      name.push_back(lower(c));
      ++pos_;
    }
    return name;
  }

  void skip_spaces() {
    while (pos_ < input_.size()) {
      char c = input_[pos_];
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f') break;
      ++pos_;
    }
  }

  void handle_start_tag() {
    ++pos_;  // '<'
    std::string tag = read_tag_name();
    auto node = std::make_unique<Node>();
    node->tag = tag;
    bool self_closing = false;
    while (pos_ < input_.size()) {
      skip_spaces();
      if (pos_ >= input_.size()) break;
      char c = input_[pos_];
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '/') {
        ++pos_;
        if (pos_ < input_.size() && input_[pos_] == '>') {
          self_closing = true;
          ++pos_;
          break;
        }
        continue;
      }
      read_attribute(*node);
    }
    saw_element_ = true;
    if (tag == "p" || tag == "li" || tag == "td" || tag == "th" || tag == "tr" ||
        tag == "option") {
      auto_close(tag);
    }
    Node* parent = stack_.back();
    node->parent = parent;
    node->order = next_order_++;
    Node* raw = node.get();
    parent->children.push_back(std::move(node));
    if (self_closing || is_void_element(tag)) return;
    if (is_raw_text_element(tag)) {
      skip_raw_text(tag);
      return;
    }
    stack_.push_back(raw);
  }

  // <p> closes an open <p> on any block-level start; <li>/<td>/<th>/<tr>/
  // <option> close a same-named open element.
  void auto_close(std::string_view tag) {
    if (closes_open_paragraph(tag)) {
      for (std::size_t i = stack_.size(); i-- > 1;) {
        if (stack_[i]->tag == "p") {
          stack_.resize(i);
          break;
        }
        if (stack_[i]->tag != "span" && stack_[i]->tag != "a" && stack_[i]->tag != "b" &&
            stack_[i]->tag != "i" && stack_[i]->tag != "em" && stack_[i]->tag != "strong" &&
            stack_[i]->tag != "u" && stack_[i]->tag != "small") {
          break;  // p not open at this level
        }
      }
    }
    if (tag == "li" || tag == "td" || tag == "th" || tag == "tr" || tag == "option") {
      for (std::size_t i = stack_.size(); i-- > 1;) {
        if (stack_[i]->tag == tag) {
          stack_.resize(i);
          break;
        }
        if (stack_[i]->tag == "ul" || stack_[i]->tag == "ol" || stack_[i]->tag == "table" ||
            stack_[i]->tag == "select") {
          break;
        }
      }
    }
  }

  void read_attribute(Node& node) {
    std::string name;
    while (pos_ < input_.size()) {
      char c = input_[pos_];
      if (c == '=' || c == '>' || c == '/' || c == ' ' || c == '\t' || c == '\n' ||
          c == '\r' || c == '\f') {
        break;
      }
      name.push_back(lower(c));
      ++pos_;
    }
    if (name.empty()) {  // stray character; avoid an infinite loop
      ++pos_;
      return;
    }
    skip_spaces();
    std::string value;
    if (pos_ < input_.size() && input_[pos_] == '=') {
      ++pos_;
      skip_spaces();
      if (pos_ < input_.size() && (input_[pos_] == '"' || input_[pos_] == '\'')) {
        char quote = input_[pos_];
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < input_.size() && input_[pos_] != quote) ++pos_;
        value = std::string(input_.substr(start, pos_ - start));
        if (pos_ < input_.size()) ++pos_;
      } else {
        std::size_t start = pos_;
        while (pos_ < input_.size()) {
          char c = input_[pos_];
          if (c == '>' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') break;
          ++pos_;
        }
        value = std::string(input_.substr(start, pos_ - start));
      }
    }
    node.attributes.emplace_back(std::move(name), decode_entities(value));
  }

  void skip_raw_text(std::string_view tag) {
    std::string closer = "</" + std::string(tag);
    std::size_t i = pos_;
    while (i < input_.size()) {
      std::size_t hit = input_.find('<', i);
      if (hit == std::string_view::npos) {
        pos_ = input_.size();
        return;
      }
      bool match = true;
      for (std::size_t k = 0; k < closer.size(); ++k) {
        if (hit + k >= input_.size() || lower(input_[hit + k]) != closer[k]) {
          match = false;
          break;
        }
      }
      if (match) {
        std::size_t end = input_.find('>', hit);
        pos_ = (end == std::string_view::npos) ? input_.size() : end + 1;
        return;
      }
      i = hit + 1;
    }
    pos_ = input_.size();
  }

  void handle_end_tag() {
    pos_ += 2;  // "</"
    std::string tag = read_tag_name();
    skip_until('>');
    if (tag.empty()) return;
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->tag == tag) {
        stack_.resize(i);  // implicitly closes anything deeper
        return;
      }
    }
    // no matching open tag: ignore
  }

  std::string_view input_;
  std::size_t pos_ = 0;
  int next_order_ = 0;
  bool saw_element_ = false;
  std::vector<Node*> stack_;
};

void collect_text(const Node& node, std::string& out) {
  if (node.type == Node::Type::Text) {
    out += node.text;
    return;
  }
  if (is_text_excluded(node.tag)) return;
  for (const auto& child : node.children) {
    bool boundary =
        child->type == Node::Type::Element && is_block_boundary(child->tag);
    if (boundary) out.push_back(' ');
    collect_text(*child, out);
    if (boundary) out.push_back(' ');
  }
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = utf8::decode(text, pos);
    if (utf8::is_whitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    utf8::append(out, cp);
  }
  return out;
}

}  // namespace

const std::string* Node::attribute(std::string_view name) const {
  for (const auto& [attr_name, attr_value] : attributes) {
    if (attr_name == name) return &attr_value;
  }
  return nullptr;
}

Document parse(std::string_view input) {
  return Parser(input).run();
}

std::string text_content(const Node& node) {
  std::string raw;
  collect_text(node, raw);
  return collapse_whitespace(decode_entities(raw));
}

}  // namespace lexitrend::html
