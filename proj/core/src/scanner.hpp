#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "initsem/error.hpp"

namespace initsem::detail {

// Character cursor shared by the DSL parsers. Whitespace is insignificant
// and `--` starts a comment running to end of line.
class Scanner {
 public:
  explicit Scanner(std::string_view text, std::size_t line = 1) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  char peek_raw(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    for (std::size_t i = 0; i < token.size(); ++i) advance();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'" + found());
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
  }

  std::optional<std::string> accept_ident() {
    skip_space();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) return std::nullopt;
    std::string out;
    while (pos_ < text_.size() && ident_char(text_[pos_])) {
      out.push_back(text_[pos_]);
      advance();
    }
    return out;
  }

  std::string expect_ident(std::string_view what = "identifier") {
    auto id = accept_ident();
    if (!id) fail("expected " + std::string(what) + found());
    return *id;
  }

  void expect_keyword(std::string_view keyword) {
    skip_space();
    std::size_t save_pos = pos_, save_line = line_, save_col = col_;
    auto id = accept_ident();
    if (!id || *id != keyword) {
      pos_ = save_pos;
      line_ = save_line;
      col_ = save_col;
      fail("expected '" + std::string(keyword) + "'" + found());
    }
  }

  std::optional<std::size_t> accept_nat() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      return std::nullopt;
    }
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t digit = static_cast<std::size_t>(text_[pos_] - '0');
      if (value > (static_cast<std::size_t>(-1) - digit) / 10) fail("number too large");
      value = value * 10 + digit;
      advance();
    }
    return value;
  }

  std::size_t expect_nat(std::string_view what = "natural number") {
    auto n = accept_nat();
    if (!n) fail("expected " + std::string(what) + found());
    return *n;
  }

  std::string found() {
    skip_space();
    if (pos_ >= text_.size()) return ", found end of input";
    return ", found '" + std::string(1, text_[pos_]) + "'";
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(line_, col_, message);
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col_ = 1;
};

}  // namespace initsem::detail
