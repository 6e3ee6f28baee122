#pragma once

// Character-level scanning shared by the Turtle and N-Triples parsers.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "ontolookup/rdf/parser.hpp"

namespace ontolookup::rdf::detail {

class Lexer {
 public:
  explicit Lexer(std::string_view input) : input_(input) {}

  bool at_end() const noexcept { return pos_ >= input_.size(); }
  std::size_t position() const noexcept { return pos_; }
  char peek(std::size_t ahead = 0) const noexcept {
    return pos_ + ahead < input_.size() ? input_[pos_ + ahead] : '\0';
  }
  void advance(std::size_t n = 1) noexcept { pos_ += n; }
  void seek(std::size_t offset) noexcept { pos_ = offset; }
  bool consume(char c) noexcept {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool starts_with(std::string_view s) const noexcept {
    return input_.substr(pos_).starts_with(s);
  }
  // Case-insensitive keyword followed by whitespace or end (for PREFIX/BASE).
  bool starts_with_keyword_ci(std::string_view keyword) const noexcept;

  // Whitespace and '#' comments.
  void skip_ws();
  // Spaces and tabs only (N-Triples statements are line-bound).
  void skip_inline_ws();

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(std::size_t offset, const std::string& message) const;
  void expect(char c, std::string_view what);

  // `<...>` with \u and \U escapes decoded. The brackets are consumed.
  std::string read_iriref();
  // Any of the four Turtle string forms; N-Triples uses only "...".
  std::string read_string(bool allow_long_and_single);
  // After '@'. Returns the raw tag.
  std::string read_langtag();
  // After "_:". Returns the label.
  std::string read_blank_label();

 private:
  void append_utf8(std::string& out, std::uint32_t cp) const;
  std::uint32_t read_hex(std::size_t digits);

  std::string_view input_;
  std::size_t pos_ = 0;
};

bool is_pn_chars_base(std::uint32_t cp) noexcept;

// Decodes the UTF-8 code point at `pos`; `length` receives its byte length.
std::uint32_t decode_utf8(std::string_view s, std::size_t pos, std::size_t& length) noexcept;

}  // namespace ontolookup::rdf::detail
