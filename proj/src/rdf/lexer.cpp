#include "lexer.hpp"

namespace ontolookup::rdf::detail {

std::uint32_t decode_utf8(std::string_view s, std::size_t pos, std::size_t& length) noexcept {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](std::size_t i) -> std::uint32_t {
    if (pos + i >= s.size()) return 0xFFFFFFFFu;
    auto b = static_cast<unsigned char>(s[pos + i]);
    return (b & 0xC0) == 0x80 ? (b & 0x3Fu) : 0xFFFFFFFFu;
  };
  if (b0 < 0x80) {
    length = 1;
    return b0;
  }
  if ((b0 & 0xE0) == 0xC0) {
    length = 2;
    auto c1 = cont(1);
    return c1 == 0xFFFFFFFFu ? 0xFFFD : ((b0 & 0x1Fu) << 6) | c1;
  }
  if ((b0 & 0xF0) == 0xE0) {
    length = 3;
    auto c1 = cont(1), c2 = cont(2);
    if (c1 == 0xFFFFFFFFu || c2 == 0xFFFFFFFFu) return 0xFFFD;
    return ((b0 & 0x0Fu) << 12) | (c1 << 6) | c2;
  }
  if ((b0 & 0xF8) == 0xF0) {
    length = 4;
    auto c1 = cont(1), c2 = cont(2), c3 = cont(3);
    if (c1 == 0xFFFFFFFFu || c2 == 0xFFFFFFFFu || c3 == 0xFFFFFFFFu) return 0xFFFD;
    return ((b0 & 0x07u) << 18) | (c1 << 12) | (c2 << 6) | c3;
  }
  length = 1;
  return 0xFFFD;
}

bool is_pn_chars_base(std::uint32_t cp) noexcept {
  return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z') || (cp >= 0xC0 && cp <= 0xD6) ||
         (cp >= 0xD8 && cp <= 0xF6) || (cp >= 0xF8 && cp <= 0x2FF) ||
         (cp >= 0x370 && cp <= 0x37D) || (cp >= 0x37F && cp <= 0x1FFF) ||
         (cp >= 0x200C && cp <= 0x200D) || (cp >= 0x2070 && cp <= 0x218F) ||
         (cp >= 0x2C00 && cp <= 0x2FEF) || (cp >= 0x3001 && cp <= 0xD7FF) ||
         (cp >= 0xF900 && cp <= 0xFDCF) || (cp >= 0xFDF0 && cp <= 0xFFFD) ||
         (cp >= 0x10000 && cp <= 0xEFFFF);
}

bool Lexer::starts_with_keyword_ci(std::string_view keyword) const noexcept {
  if (pos_ + keyword.size() > input_.size()) return false;
  for (std::size_t i = 0; i < keyword.size(); ++i) {
    char c = input_[pos_ + i];
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    if (c != keyword[i]) return false;
  }
  char next = peek(keyword.size());
  return next == ' ' || next == '\t' || next == '\n' || next == '\r' || next == '<' ||
         next == '\0';
}

void Lexer::skip_ws() {
  while (!at_end()) {
    char c = peek();
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++pos_;
    } else if (c == '#') {
      while (!at_end() && peek() != '\n' && peek() != '\r') ++pos_;
    } else {
      break;
    }
  }
}

void Lexer::skip_inline_ws() {
  while (peek() == ' ' || peek() == '\t') ++pos_;
}

void Lexer::fail(const std::string& message) const { fail_at(pos_, message); }

void Lexer::fail_at(std::size_t offset, const std::string& message) const {
  std::size_t line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < offset && i < input_.size(); ++i) {
    if (input_[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  }
  std::size_t column = offset - line_start + 1;
  throw ParseError(message + " at line " + std::to_string(line) + ", column " +
                       std::to_string(column),
                   line, column);
}

void Lexer::expect(char c, std::string_view what) {
  if (!consume(c)) fail("expected " + std::string(what));
}

void Lexer::append_utf8(std::string& out, std::uint32_t cp) const {
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid code point escape");
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::uint32_t Lexer::read_hex(std::size_t digits) {
  std::uint32_t value = 0;
  for (std::size_t i = 0; i < digits; ++i) {
    char c = peek();
    std::uint32_t d;
    if (c >= '0' && c <= '9') {
      d = static_cast<std::uint32_t>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      d = static_cast<std::uint32_t>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      d = static_cast<std::uint32_t>(c - 'A' + 10);
    } else {
      fail("invalid hex digit in escape");
    }
    value = value * 16 + d;
    ++pos_;
  }
  return value;
}

std::string Lexer::read_iriref() {
  expect('<', "'<'");
  std::string out;
  while (true) {
    if (at_end()) fail("unterminated IRI");
    char c = peek();
    if (c == '>') {
      ++pos_;
      return out;
    }
    if (c == '\\') {
      ++pos_;
      if (consume('u')) {
        append_utf8(out, read_hex(4));
      } else if (consume('U')) {
        append_utf8(out, read_hex(8));
      } else {
        fail("invalid escape in IRI");
      }
      continue;
    }
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '^' || c == '`' || c == '<') {
      fail("illegal character in IRI");
    }
    out += c;
    ++pos_;
  }
}

std::string Lexer::read_string(bool allow_long_and_single) {
  char quote = peek();
  if (quote != '"' && !(allow_long_and_single && quote == '\'')) fail("expected string literal");
  bool is_long = allow_long_and_single && peek(1) == quote && peek(2) == quote;
  advance(is_long ? 3 : 1);
  std::string out;
  while (true) {
    if (at_end()) fail("unterminated string literal");
    char c = peek();
    if (is_long) {
      if (c == quote && peek(1) == quote && peek(2) == quote) {
        // A long string may end with up to two extra quote characters.
        std::size_t run = 3;
        while (peek(run) == quote && run < 5) ++run;
        out.append(run - 3, quote);
        advance(run);
        return out;
      }
    } else {
      if (c == quote) {
        ++pos_;
        return out;
      }
      if (c == '\n' || c == '\r') fail("newline in short string literal");
    }
    if (c == '\\') {
      ++pos_;
      char e = peek();
      ++pos_;
      switch (e) {
        case 't': out += '\t'; break;
        case 'b': out += '\b'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 'f': out += '\f'; break;
        case '"': out += '"'; break;
        case '\'': out += '\''; break;
        case '\\': out += '\\'; break;
        case 'u': append_utf8(out, read_hex(4)); break;
        case 'U': append_utf8(out, read_hex(8)); break;
        default: fail_at(pos_ - 2, "invalid string escape");
      }
      continue;
    }
    out += c;
    ++pos_;
  }
}

std::string Lexer::read_langtag() {
  std::string out;
  auto is_letter = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto is_alnum = [&](char c) { return is_letter(c) || (c >= '0' && c <= '9'); };
  if (!is_letter(peek())) fail("invalid language tag");
  while (is_letter(peek())) {
    out += peek();
    ++pos_;
  }
  while (peek() == '-' && is_alnum(peek(1))) {
    out += '-';
    ++pos_;
    while (is_alnum(peek())) {
      out += peek();
      ++pos_;
    }
  }
  return out;
}

std::string Lexer::read_blank_label() {
  std::string out;
  std::size_t start = pos_;
  while (!at_end()) {
    std::size_t len = 1;
    std::uint32_t cp = decode_utf8(input_, pos_, len);
    bool first = pos_ == start;
    bool ok = is_pn_chars_base(cp) || cp == '_' || (cp >= '0' && cp <= '9') ||
              (!first && (cp == '-' || cp == 0xB7 || (cp >= 0x300 && cp <= 0x36F) ||
                          (cp >= 0x203F && cp <= 0x2040) || cp == '.'));
    if (!ok) break;
    out.append(input_.substr(pos_, len));
    pos_ += len;
  }
  // A label cannot end with '.'; the dot terminates the statement.
  while (!out.empty() && out.back() == '.') {
    out.pop_back();
    --pos_;
  }
  if (out.empty()) fail("empty blank node label");
  return out;
}

}  // namespace ontolookup::rdf::detail
