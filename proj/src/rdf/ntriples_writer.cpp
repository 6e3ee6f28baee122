#include "ontolookup/rdf/ntriples_writer.hpp"

#include <cstdio>

#include "ontolookup/rdf/vocab.hpp"

namespace ontolookup::rdf {
namespace {

void append_escaped_literal(std::string& out, const std::string& s) {
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
}

void append_iri(std::string& out, const std::string& iri) {
  out += '<';
  for (char c : iri) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
        c == '^' || c == '`' || c == '\\') {
      char buf[12];
      std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(u));
      out += buf;
    } else {
      out += c;
    }
  }
  out += '>';
}

void append_blank(std::string& out, const std::string& id) {
  out += "_:";
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '-' || static_cast<unsigned char>(c) >= 0x80;
    out += ok ? c : '_';
  }
}

void append_term(std::string& out, const Term& term) {
  switch (term.kind()) {
    case TermKind::iri:
      append_iri(out, term.value());
      break;
    case TermKind::blank:
      append_blank(out, term.value());
      break;
    case TermKind::literal:
      out += '"';
      append_escaped_literal(out, term.value());
      out += '"';
      if (!term.language().empty()) {
        out += '@';
        out += term.language();
      } else if (term.datatype() != vocab::xsd::string) {
        out += "^^";
        append_iri(out, term.datatype());
      }
      break;
  }
}

}  // namespace

std::string to_ntriples(const Term& term) {
  std::string out;
  append_term(out, term);
  return out;
}

std::string to_ntriples(const Triple& triple) {
  std::string out;
  append_term(out, triple.subject);
  out += ' ';
  append_iri(out, triple.predicate);
  out += ' ';
  append_term(out, triple.object);
  out += " .";
  return out;
}

void write_ntriples(std::ostream& out, std::span<const Triple> triples) {
  for (const auto& t : triples) out << to_ntriples(t) << '\n';
}

}  // namespace ontolookup::rdf
