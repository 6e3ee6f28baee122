#include "ontolookup/rdf/term.hpp"

#include "ontolookup/rdf/vocab.hpp"

namespace ontolookup::rdf {

Term Term::iri(std::string value) {
  Term t;
  t.kind_ = TermKind::iri;
  t.value_ = std::move(value);
  return t;
}

Term Term::blank(std::string id) {
  Term t;
  t.kind_ = TermKind::blank;
  t.value_ = std::move(id);
  return t;
}

Term Term::literal(std::string lexical, std::string datatype, std::string language) {
  Term t;
  t.kind_ = TermKind::literal;
  t.value_ = std::move(lexical);
  if (!language.empty()) {
    t.language_ = normalize_language_tag(language);
    t.datatype_ = std::string(vocab::rdf::lang_string);
  } else if (datatype.empty()) {
    t.datatype_ = std::string(vocab::xsd::string);
  } else {
    t.datatype_ = std::move(datatype);
  }
  return t;
}

std::size_t hash_value(const Term& term) noexcept {
  std::size_t h = std::hash<std::string>{}(term.value());
  h ^= static_cast<std::size_t>(term.kind()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  if (term.is_literal()) {
    h ^= std::hash<std::string>{}(term.datatype()) + (h << 6) + (h >> 2);
    h ^= std::hash<std::string>{}(term.language()) + (h << 6) + (h >> 2);
  }
  return h;
}

std::string normalize_language_tag(std::string_view tag) {
  std::string out(tag);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace ontolookup::rdf
