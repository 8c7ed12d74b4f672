#ifndef BSV_TOML_SUBSET_HPP
#define BSV_TOML_SUBSET_HPP

// Reader for the subset of TOML used by scenario files: [tables],
// [[arrays of tables]], bare keys, basic strings, integers, booleans,
// (nested, multi-line) arrays and # comments. Produces nlohmann::json.

#include <cctype>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bsv/rational.hpp"

namespace bsv {

class TomlError : public Error {
 public:
  TomlError(const std::string& msg, std::size_t line)
      : Error("scenario line " + std::to_string(line) + ": " + msg), line(line) {}
  std::size_t line;
};

namespace detail {

class TomlReader {
 public:
  explicit TomlReader(std::string_view text) : s_(text) {}

  nlohmann::json read() {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* table = &root;
    while (true) {
      skip_blank_lines();
      if (at_end()) break;
      if (peek() == '[') {
        table = open_table(root);
      } else {
        std::string key = bare_key();
        skip_spaces();
        expect('=');
        skip_spaces();
        nlohmann::json v = value();
        if (table->contains(key)) fail("duplicate key '" + key + "'");
        (*table)[key] = std::move(v);
      }
      end_of_line();
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw TomlError(msg, line_); }
  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[i_]; }
  char get() {
    char c = s_[i_++];
    if (c == '\n') ++line_;
    return c;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }
  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) get();
  }
  void skip_comment() {
    if (peek() == '#')
      while (!at_end() && peek() != '\n') get();
  }
  void skip_blank_lines() {
    while (!at_end()) {
      skip_spaces();
      skip_comment();
      if (peek() == '\n' || peek() == '\r') {
        get();
      } else {
        break;
      }
    }
  }
  // Inside arrays newlines and comments are insignificant.
  void skip_ws_in_array() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        get();
      } else if (c == '#') {
        skip_comment();
      } else {
        break;
      }
    }
  }
  void end_of_line() {
    skip_spaces();
    skip_comment();
    if (peek() == '\r') get();
    if (!at_end() && peek() != '\n') fail(std::string("unexpected '") + peek() + "'");
  }

  std::string bare_key() {
    std::string k;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-'))
      k += get();
    if (k.empty()) fail("expected a key");
    return k;
  }

  nlohmann::json* open_table(nlohmann::json& root) {
    get();
    bool array = peek() == '[';
    if (array) get();
    skip_spaces();
    std::string name = bare_key();
    skip_spaces();
    expect(']');
    if (array) expect(']');
    if (array) {
      nlohmann::json& arr = root[name];
      if (arr.is_null()) arr = nlohmann::json::array();
      if (!arr.is_array()) fail("'" + name + "' is both a table and an array of tables");
      arr.push_back(nlohmann::json::object());
      return &arr.back();
    }
    if (root.contains(name)) fail("table [" + name + "] defined twice");
    root[name] = nlohmann::json::object();
    return &root[name];
  }

  nlohmann::json value() {
    char c = peek();
    if (c == '"') return string_value();
    if (c == '[') return array_value();
    if (c == 't' || c == 'f') {
      std::string w = bare_key();
      if (w == "true") return true;
      if (w == "false") return false;
      fail("unknown literal '" + w + "'");
    }
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      if (c == '-' || c == '+') num += get();
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_')) {
        char d = get();
        if (d != '_') num += d;
      }
      if (peek() == '.' || peek() == 'e' || peek() == 'E')
        fail("floating point values are not supported; write rationals as strings like \"1/2\"");
      if (num.empty() || num == "-" || num == "+") fail("malformed integer");
      try {
        return std::stol(num);
      } catch (const std::exception&) {
        fail("integer out of range");
      }
    }
    fail("expected a value");
  }

  nlohmann::json string_value() {
    get();
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      char c = get();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("unterminated string");
        char e = get();
        switch (e) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default: fail(std::string("unsupported escape '\\") + e + "'");
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  nlohmann::json array_value() {
    get();
    nlohmann::json arr = nlohmann::json::array();
    while (true) {
      skip_ws_in_array();
      if (peek() == ']') {
        get();
        return arr;
      }
      arr.push_back(value());
      skip_ws_in_array();
      if (peek() == ',') {
        get();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
};

}  // namespace detail

inline nlohmann::json parse_toml_subset(std::string_view text) { return detail::TomlReader(text).read(); }

}  // namespace bsv

#endif  // BSV_TOML_SUBSET_HPP
