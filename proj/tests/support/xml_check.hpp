#pragma once

// Minimal XML well-formedness checker used as an independent oracle for the
// GraphML writer. Covers what the writer can produce: a prolog, nested
// elements, attributes, text with entity references. No DTD, CDATA or
// processing-instruction support.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace testsupport {

class XmlChecker {
 public:
  explicit XmlChecker(std::string_view text) : text_(text) {}

  bool run(std::string* error) {
    skip_ws();
    if (peek_starts("<?xml")) {
      auto end = text_.find("?>", pos_);
      if (end == std::string_view::npos) return fail(error, "unterminated prolog");
      pos_ = end + 2;
    }
    skip_ws();
    if (!parse_element(error)) return false;
    skip_ws();
    if (pos_ != text_.size()) return fail(error, "content after the root element");
    return true;
  }

 private:
  bool fail(std::string* error, const std::string& message) {
    if (error) *error = message + " at offset " + std::to_string(pos_);
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool peek_starts(std::string_view prefix) const {
    return text_.substr(pos_, prefix.size()) == prefix;
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '.' || c == ':';
  }

  bool parse_name(std::string& out, std::string* error) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (pos_ == start) return fail(error, "expected a name");
    out = std::string(text_.substr(start, pos_ - start));
    return true;
  }

  bool parse_entity(std::string* error) {
    // pos_ is at '&'
    auto end = text_.find(';', pos_);
    if (end == std::string_view::npos || end - pos_ > 8) {
      return fail(error, "malformed entity reference");
    }
    std::string_view body = text_.substr(pos_ + 1, end - pos_ - 1);
    if (body != "amp" && body != "lt" && body != "gt" && body != "quot" &&
        body != "apos" && !(body.size() > 1 && body[0] == '#')) {
      return fail(error, "unknown entity reference");
    }
    pos_ = end + 1;
    return true;
  }

  bool parse_attributes(std::string* error) {
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) return fail(error, "unterminated tag");
      if (text_[pos_] == '>' || peek_starts("/>")) return true;
      std::string name;
      if (!parse_name(name, error)) return false;
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '=') {
        return fail(error, "expected '=' after attribute name");
      }
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\'')) {
        return fail(error, "attribute value must be quoted");
      }
      const char quote = text_[pos_++];
      while (pos_ < text_.size() && text_[pos_] != quote) {
        if (text_[pos_] == '<') return fail(error, "raw '<' in attribute value");
        if (text_[pos_] == '&') {
          if (!parse_entity(error)) return false;
        } else {
          ++pos_;
        }
      }
      if (pos_ >= text_.size()) return fail(error, "unterminated attribute value");
      ++pos_;
    }
  }

  bool parse_element(std::string* error) {
    if (pos_ >= text_.size() || text_[pos_] != '<') {
      return fail(error, "expected an element");
    }
    ++pos_;
    std::string name;
    if (!parse_name(name, error)) return false;
    if (!parse_attributes(error)) return false;
    if (peek_starts("/>")) {
      pos_ += 2;
      return true;
    }
    if (text_[pos_] != '>') return fail(error, "expected '>'");
    ++pos_;
    for (;;) {
      if (pos_ >= text_.size()) return fail(error, "unclosed element " + name);
      if (peek_starts("</")) {
        pos_ += 2;
        std::string closing;
        if (!parse_name(closing, error)) return false;
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '>') {
          return fail(error, "malformed closing tag");
        }
        ++pos_;
        if (closing != name) {
          return fail(error, "mismatched closing tag " + closing + " for " + name);
        }
        return true;
      }
      if (text_[pos_] == '<') {
        if (!parse_element(error)) return false;
      } else if (text_[pos_] == '&') {
        if (!parse_entity(error)) return false;
      } else {
        ++pos_;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline bool xml_well_formed(std::string_view text, std::string* error = nullptr) {
  return XmlChecker(text).run(error);
}

}  // namespace testsupport
