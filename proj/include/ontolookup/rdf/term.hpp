#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace ontolookup::rdf {

enum class TermKind : std::uint8_t { iri, blank, literal };

// One RDF term. IRIs are absolute after parsing; blank ids are opaque and
// document-scoped; literals carry a datatype IRI and, for language-tagged
// strings only, a lowercased language tag.
class Term {
 public:
  Term() = default;

  static Term iri(std::string value);
  static Term blank(std::string id);
  // A non-empty language forces the rdf:langString datatype and is lowercased.
  static Term literal(std::string lexical, std::string datatype = {},
                      std::string language = {});

  TermKind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == TermKind::iri; }
  bool is_blank() const noexcept { return kind_ == TermKind::blank; }
  bool is_literal() const noexcept { return kind_ == TermKind::literal; }

  // IRI text, blank id, or literal lexical form.
  const std::string& value() const noexcept { return value_; }
  const std::string& datatype() const noexcept { return datatype_; }
  const std::string& language() const noexcept { return language_; }

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term&, const Term&) = default;

 private:
  TermKind kind_ = TermKind::iri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

struct Triple {
  Term subject;           // never a literal
  std::string predicate;  // always an IRI
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple&, const Triple&) = default;
};

std::size_t hash_value(const Term& term) noexcept;

struct TermHash {
  std::size_t operator()(const Term& term) const noexcept { return hash_value(term); }
};

// Lowercases ASCII letters only; BCP-47 tags are ASCII.
std::string normalize_language_tag(std::string_view tag);

}  // namespace ontolookup::rdf
