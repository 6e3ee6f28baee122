#include "lexer.hpp"
#include "ontolookup/rdf/iri.hpp"
#include "parsers.hpp"

namespace ontolookup::rdf::detail {
namespace {

class NTriplesParser {
 public:
  NTriplesParser(std::string_view input, const ParseOptions& options, const TripleSink& sink)
      : lex_(input), options_(options), sink_(sink) {}

  void run() {
    while (!lex_.at_end()) {
      lex_.skip_inline_ws();
      char c = lex_.peek();
      if (c == '#') {
        while (!lex_.at_end() && lex_.peek() != '\n' && lex_.peek() != '\r') lex_.advance();
      } else if (c != '\n' && c != '\r' && !lex_.at_end()) {
        statement();
      }
      end_of_line();
    }
  }

 private:
  void statement() {
    Term subject;
    if (lex_.peek() == '<') {
      subject = Term::iri(iri());
    } else if (lex_.starts_with("_:")) {
      subject = blank();
    } else {
      lex_.fail("expected IRI or blank node as subject");
    }
    lex_.skip_inline_ws();
    if (lex_.peek() != '<') lex_.fail("expected IRI as predicate");
    std::string predicate = iri();
    lex_.skip_inline_ws();
    Term object;
    char c = lex_.peek();
    if (c == '<') {
      object = Term::iri(iri());
    } else if (lex_.starts_with("_:")) {
      object = blank();
    } else if (c == '"') {
      std::string lexical = lex_.read_string(false);
      if (lex_.consume('@')) {
        object = Term::literal(std::move(lexical), {}, lex_.read_langtag());
      } else if (lex_.starts_with("^^")) {
        lex_.advance(2);
        if (lex_.peek() != '<') lex_.fail("expected datatype IRI");
        object = Term::literal(std::move(lexical), iri());
      } else {
        object = Term::literal(std::move(lexical));
      }
    } else {
      lex_.fail("expected IRI, blank node, or literal as object");
    }
    lex_.skip_inline_ws();
    lex_.expect('.', "'.' at end of triple");
    lex_.skip_inline_ws();
    if (lex_.peek() == '#') {
      while (!lex_.at_end() && lex_.peek() != '\n' && lex_.peek() != '\r') lex_.advance();
    }
    sink_(Triple{std::move(subject), std::move(predicate), std::move(object)});
  }

  void end_of_line() {
    if (lex_.at_end()) return;
    if (lex_.peek() == '\r') lex_.advance();
    if (lex_.peek() == '\n') {
      lex_.advance();
      return;
    }
    if (!lex_.at_end()) lex_.fail("unexpected content after triple");
  }

  std::string iri() {
    std::size_t at = lex_.position();
    std::string value = lex_.read_iriref();
    if (is_absolute_iri(value)) return value;
    if (options_.base_iri.empty()) lex_.fail_at(at, "relative IRI <" + value + "> in N-Triples");
    return resolve_iri(options_.base_iri, value);
  }

  Term blank() {
    lex_.advance(2);
    return Term::blank(options_.blank_prefix + "l" + lex_.read_blank_label());
  }

  Lexer lex_;
  const ParseOptions& options_;
  const TripleSink& sink_;
};

}  // namespace

void parse_ntriples(std::string_view document, const ParseOptions& options,
                    const TripleSink& sink) {
  NTriplesParser(document, options, sink).run();
}

}  // namespace ontolookup::rdf::detail
