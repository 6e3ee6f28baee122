#include <string>
#include <unordered_map>

#include "lexer.hpp"
#include "ontolookup/rdf/iri.hpp"
#include "ontolookup/rdf/vocab.hpp"
#include "parsers.hpp"

namespace ontolookup::rdf::detail {
namespace {

bool is_pn_chars_u(std::uint32_t cp) { return is_pn_chars_base(cp) || cp == '_'; }

bool is_pn_chars(std::uint32_t cp) {
  return is_pn_chars_u(cp) || cp == '-' || (cp >= '0' && cp <= '9') || cp == 0xB7 ||
         (cp >= 0x300 && cp <= 0x36F) || (cp >= 0x203F && cp <= 0x2040);
}

bool is_local_escape(char c) {
  return std::string_view("_~.-!$&'()*+,;=/?#@%").find(c) != std::string_view::npos;
}

bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class TurtleParser {
 public:
  TurtleParser(std::string_view input, const ParseOptions& options, const TripleSink& sink)
      : input_(input), lex_(input), options_(options), sink_(sink), base_(options.base_iri) {}

  void run() {
    lex_.skip_ws();
    while (!lex_.at_end()) {
      statement();
      lex_.skip_ws();
    }
  }

 private:
  void statement() {
    if (lex_.starts_with("@prefix")) {
      lex_.advance(7);
      prefix_declaration();
      lex_.skip_ws();
      lex_.expect('.', "'.' after @prefix");
    } else if (lex_.starts_with("@base")) {
      lex_.advance(5);
      base_declaration();
      lex_.skip_ws();
      lex_.expect('.', "'.' after @base");
    } else if (lex_.starts_with_keyword_ci("PREFIX")) {
      lex_.advance(6);
      prefix_declaration();
    } else if (lex_.starts_with_keyword_ci("BASE")) {
      lex_.advance(4);
      base_declaration();
    } else {
      triples();
      lex_.skip_ws();
      lex_.expect('.', "'.' at end of statement");
    }
  }

  void prefix_declaration() {
    lex_.skip_ws();
    std::string prefix = read_pn_prefix();
    lex_.expect(':', "':' in prefix declaration");
    lex_.skip_ws();
    std::size_t at = lex_.position();
    prefixes_[prefix] = resolve(lex_.read_iriref(), at);
  }

  void base_declaration() {
    lex_.skip_ws();
    std::size_t at = lex_.position();
    base_ = resolve(lex_.read_iriref(), at);
  }

  void triples() {
    Term subject;
    if (lex_.peek() == '[') {
      bool had_properties = false;
      subject = blank_node_property_list(had_properties);
      lex_.skip_ws();
      if (had_properties && lex_.peek() == '.') return;
    } else {
      subject = read_subject();
      lex_.skip_ws();
    }
    predicate_object_list(subject);
  }

  void predicate_object_list(const Term& subject) {
    std::string verb = read_verb();
    object_list(subject, verb);
    lex_.skip_ws();
    while (lex_.consume(';')) {
      lex_.skip_ws();
      char c = lex_.peek();
      if (c == ';') continue;
      if (c == '.' || c == ']' || lex_.at_end()) break;
      verb = read_verb();
      object_list(subject, verb);
      lex_.skip_ws();
    }
  }

  void object_list(const Term& subject, const std::string& predicate) {
    while (true) {
      lex_.skip_ws();
      Term object = read_object();
      sink_(Triple{subject, predicate, std::move(object)});
      lex_.skip_ws();
      if (!lex_.consume(',')) break;
    }
  }

  std::string read_verb() {
    lex_.skip_ws();
    if (lex_.peek() == 'a') {
      char next = lex_.peek(1);
      if (next == ' ' || next == '\t' || next == '\n' || next == '\r' || next == '<' ||
          next == '[' || next == '(' || next == '"' || next == '\'' || next == '\0') {
        lex_.advance();
        return std::string(vocab::rdf::type);
      }
    }
    if (lex_.peek() == '<') {
      std::size_t at = lex_.position();
      return resolve(lex_.read_iriref(), at);
    }
    return read_prefixed_name();
  }

  Term read_subject() {
    char c = lex_.peek();
    if (c == '<') {
      std::size_t at = lex_.position();
      return Term::iri(resolve(lex_.read_iriref(), at));
    }
    if (c == '_' && lex_.peek(1) == ':') return read_labeled_blank();
    if (c == '(') return collection();
    if (c == '"' || c == '\'' || c == '+' || c == '-' || (c >= '0' && c <= '9')) {
      lex_.fail("literal in subject position");
    }
    return Term::iri(read_prefixed_name());
  }

  Term read_object() {
    char c = lex_.peek();
    if (c == '<') {
      std::size_t at = lex_.position();
      return Term::iri(resolve(lex_.read_iriref(), at));
    }
    if (c == '_' && lex_.peek(1) == ':') return read_labeled_blank();
    if (c == '[') {
      bool had_properties = false;
      return blank_node_property_list(had_properties);
    }
    if (c == '(') return collection();
    if (c == '"' || c == '\'') return rdf_literal();
    if (c == '+' || c == '-' || c == '.' || (c >= '0' && c <= '9')) return numeric_literal();
    if (keyword_ahead("true")) {
      lex_.advance(4);
      return Term::literal("true", std::string(vocab::xsd::boolean));
    }
    if (keyword_ahead("false")) {
      lex_.advance(5);
      return Term::literal("false", std::string(vocab::xsd::boolean));
    }
    if (lex_.at_end()) lex_.fail("unexpected end of input, expected object");
    return Term::iri(read_prefixed_name());
  }

  bool keyword_ahead(std::string_view word) const {
    if (!lex_.starts_with(word)) return false;
    char next = lex_.peek(word.size());
    return !(next == ':' || (next >= 'a' && next <= 'z') || (next >= 'A' && next <= 'Z') ||
             (next >= '0' && next <= '9') || next == '_' || next == '-');
  }

  Term read_labeled_blank() {
    lex_.advance(2);
    std::string label = lex_.read_blank_label();
    return Term::blank(options_.blank_prefix + "l" + label);
  }

  Term fresh_blank() { return Term::blank(options_.blank_prefix + "g" + std::to_string(++anon_)); }

  Term blank_node_property_list(bool& had_properties) {
    lex_.expect('[', "'['");
    lex_.skip_ws();
    Term node = fresh_blank();
    if (lex_.consume(']')) {
      had_properties = false;
      return node;
    }
    had_properties = true;
    predicate_object_list(node);
    lex_.skip_ws();
    lex_.expect(']', "']' closing blank node property list");
    return node;
  }

  Term collection() {
    lex_.expect('(', "'('");
    lex_.skip_ws();
    if (lex_.consume(')')) return Term::iri(std::string(vocab::rdf::nil));
    Term head = fresh_blank();
    Term current = head;
    while (true) {
      Term item = read_object();
      sink_(Triple{current, std::string(vocab::rdf::first), std::move(item)});
      lex_.skip_ws();
      if (lex_.consume(')')) {
        sink_(Triple{current, std::string(vocab::rdf::rest), Term::iri(std::string(vocab::rdf::nil))});
        return head;
      }
      if (lex_.at_end()) lex_.fail("unterminated collection");
      Term next = fresh_blank();
      sink_(Triple{current, std::string(vocab::rdf::rest), next});
      current = std::move(next);
    }
  }

  Term rdf_literal() {
    std::string lexical = lex_.read_string(true);
    if (lex_.peek() == '@') {
      lex_.advance();
      return Term::literal(std::move(lexical), {}, lex_.read_langtag());
    }
    if (lex_.starts_with("^^")) {
      lex_.advance(2);
      std::string datatype;
      if (lex_.peek() == '<') {
        std::size_t at = lex_.position();
        datatype = resolve(lex_.read_iriref(), at);
      } else {
        datatype = read_prefixed_name();
      }
      return Term::literal(std::move(lexical), std::move(datatype));
    }
    return Term::literal(std::move(lexical));
  }

  Term numeric_literal() {
    std::size_t start = lex_.position();
    std::string text;
    auto digits = [&] {
      std::size_t n = 0;
      while (lex_.peek() >= '0' && lex_.peek() <= '9') {
        text += lex_.peek();
        lex_.advance();
        ++n;
      }
      return n;
    };
    if (lex_.peek() == '+' || lex_.peek() == '-') {
      text += lex_.peek();
      lex_.advance();
    }
    std::size_t int_digits = digits();
    std::size_t frac_digits = 0;
    bool has_dot = false;
    if (lex_.peek() == '.' && lex_.peek(1) >= '0' && lex_.peek(1) <= '9') {
      has_dot = true;
      text += '.';
      lex_.advance();
      frac_digits = digits();
    } else if (lex_.peek() == '.' && (lex_.peek(1) == 'e' || lex_.peek(1) == 'E') &&
               int_digits > 0) {
      has_dot = true;
      text += '.';
      lex_.advance();
    }
    bool has_exponent = false;
    if (lex_.peek() == 'e' || lex_.peek() == 'E') {
      has_exponent = true;
      text += lex_.peek();
      lex_.advance();
      if (lex_.peek() == '+' || lex_.peek() == '-') {
        text += lex_.peek();
        lex_.advance();
      }
      if (digits() == 0) lex_.fail_at(start, "malformed numeric literal");
    }
    if (int_digits == 0 && frac_digits == 0) lex_.fail_at(start, "malformed numeric literal");
    std::string_view datatype = has_exponent ? vocab::xsd::double_
                                : has_dot    ? vocab::xsd::decimal
                                             : vocab::xsd::integer;
    return Term::literal(std::move(text), std::string(datatype));
  }

  std::string read_pn_prefix() {
    std::string out;
    std::size_t start = lex_.position();
    while (!lex_.at_end()) {
      std::size_t len = 1;
      std::uint32_t cp = decode_utf8(input_, lex_.position(), len);
      bool first = lex_.position() == start;
      bool ok = first ? is_pn_chars_base(cp) : (is_pn_chars(cp) || cp == '.');
      if (!ok) break;
      out.append(input_.substr(lex_.position(), len));
      lex_.advance(len);
    }
    if (!out.empty() && out.back() == '.') lex_.fail("prefix name cannot end with '.'");
    return out;
  }

  std::string read_prefixed_name() {
    std::size_t start = lex_.position();
    std::string prefix = read_pn_prefix();
    if (!lex_.consume(':')) lex_.fail_at(start, "expected IRI, prefixed name, or literal");
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) lex_.fail_at(start, "undefined prefix '" + prefix + ":'");
    std::string local = read_pn_local();
    return it->second + local;
  }

  std::string read_pn_local() {
    std::string out;
    std::size_t trailing_dots = 0;
    bool first = true;
    while (!lex_.at_end()) {
      char c = lex_.peek();
      if (c == '\\' && is_local_escape(lex_.peek(1))) {
        out += lex_.peek(1);
        lex_.advance(2);
        trailing_dots = 0;
      } else if (c == '%' && is_hex(lex_.peek(1)) && is_hex(lex_.peek(2))) {
        out += c;
        out += lex_.peek(1);
        out += lex_.peek(2);
        lex_.advance(3);
        trailing_dots = 0;
      } else {
        std::size_t len = 1;
        std::uint32_t cp = decode_utf8(input_, lex_.position(), len);
        bool ok = first ? (is_pn_chars_u(cp) || cp == ':' || (cp >= '0' && cp <= '9'))
                        : (is_pn_chars(cp) || cp == ':' || cp == '.');
        if (!ok) break;
        out.append(input_.substr(lex_.position(), len));
        lex_.advance(len);
        trailing_dots = cp == '.' ? trailing_dots + 1 : 0;
      }
      first = false;
    }
    // Trailing dots belong to the statement terminator.
    if (trailing_dots > 0) {
      out.resize(out.size() - trailing_dots);
      lex_.seek(lex_.position() - trailing_dots);
    }
    return out;
  }

  std::string resolve(const std::string& iri, std::size_t at) {
    if (is_absolute_iri(iri)) return iri;
    if (base_.empty()) lex_.fail_at(at, "relative IRI <" + iri + "> with no base IRI");
    return resolve_iri(base_, iri);
  }

  std::string_view input_;
  Lexer lex_;
  const ParseOptions& options_;
  const TripleSink& sink_;
  std::string base_;
  std::unordered_map<std::string, std::string> prefixes_;
  std::size_t anon_ = 0;
};

}  // namespace

void parse_turtle(std::string_view document, const ParseOptions& options, const TripleSink& sink) {
  TurtleParser(document, options, sink).run();
}

}  // namespace ontolookup::rdf::detail
