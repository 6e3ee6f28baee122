#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ontolookup::search {

using LanguageMap = std::map<std::string, std::vector<std::string>>;

struct SearchDocument {
  std::string iri;
  std::string ontology_id;
  std::string curie;  // display form, e.g. MONDO:0000368; may be empty
  std::string kind;
  std::string short_form;
  std::string default_language = "en";
  LanguageMap labels;
  LanguageMap synonyms;
  LanguageMap definitions;
  bool is_obsolete = false;
  bool is_defining_ontology = true;
  std::map<std::string, std::vector<std::string>> annotation_fields;

  friend bool operator==(const SearchDocument&, const SearchDocument&) = default;
};

enum class Tier : int {
  exact_label = 1,
  exact_synonym = 2,
  label_prefix = 3,
  label_tokens = 4,
  definition_tokens = 5,
  identifier = 6,
};

// Lowercased (ASCII), split on anything but letters, digits, ':' and '_'.
// Bytes outside ASCII count as letters. A token with an inner ':' is also
// emitted in its colon-separated parts.
std::vector<std::string> tokenize(std::string_view text);

// Lowercase (ASCII) with surrounding whitespace removed.
std::string normalize(std::string_view text);

// Values for `lang`, else the document's default language, else the first
// language that has any.
const std::vector<std::string>* select_language(const LanguageMap& map, std::string_view lang,
                                                std::string_view default_language);

// Best tier of one document for a normalized query, if any.
std::optional<Tier> match_tier(const SearchDocument& doc, std::string_view normalized_query,
                               const std::vector<std::string>& query_tokens, std::string_view lang);

// First label in the selected language, else short_form, else the IRI.
std::string display_label(const SearchDocument& doc, std::string_view lang);
std::size_t utf8_length(std::string_view s);

class QueryError : public std::invalid_argument {
 public:
  enum class Kind { invalid_query, invalid_parameter };
  QueryError(Kind kind, const std::string& message) : std::invalid_argument(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct SearchFilters {
  std::optional<std::string> ontology;
  std::string lang = "en";
  bool exact = false;
  bool include_obsolete = false;
};

inline constexpr std::size_t kMaxPageSize = 500;

struct RankedHit {
  std::uint32_t doc = 0;
  Tier tier = Tier::exact_label;
  bool is_obsolete = false;
  bool is_defining_ontology = true;
  std::size_t label_length = 0;
  std::string label;
};

struct SearchResult {
  std::size_t total = 0;
  std::vector<RankedHit> hits;
};

struct Suggestion {
  std::string label;
  std::string iri;
  std::string ontology_id;

  friend bool operator==(const Suggestion&, const Suggestion&) = default;
};

class SearchIndex {
 public:
  static SearchIndex build(std::vector<SearchDocument> documents);

  std::string serialize() const;
  static SearchIndex deserialize(std::string_view bytes);
  // Appends another segment; document ids of `other` shift by size().
  void append(const SearchIndex& other);

  std::size_t size() const { return documents_.size(); }
  const SearchDocument& document(std::uint32_t id) const { return documents_.at(id); }
  const std::vector<SearchDocument>& documents() const { return documents_; }

  // Page is 0-based; size in 1..kMaxPageSize.
  SearchResult search(std::string_view query, const SearchFilters& filters, std::size_t page,
                      std::size_t size) const;
  // Non-obsolete labels starting with the prefix, shortest first.
  std::vector<Suggestion> suggest(std::string_view prefix, const std::optional<std::string>& ontology,
                                  std::string_view lang, std::size_t limit) const;

  std::size_t token_count() const { return postings_.size(); }
  std::size_t posting_count(std::string_view token) const;
  std::size_t exact_count(std::string_view normalized_value) const;

 private:
  enum class Field : std::uint8_t { label, synonym, definition };
  struct Posting {
    std::uint32_t doc;
    Field field;
    std::uint16_t lang;
  };
  struct LabelEntry {
    std::string normalized;
    std::uint32_t doc;
    std::uint16_t lang;
  };

  std::uint16_t language_id(const std::string& tag);
  void index_document(std::uint32_t id);
  void finish();
  std::vector<std::uint32_t> candidates(const std::string& q, const std::vector<std::string>& tokens) const;
  std::pair<std::size_t, std::size_t> prefix_range(std::string_view prefix) const;

  std::vector<SearchDocument> documents_;
  std::vector<std::string> languages_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;  // token -> postings
  std::unordered_map<std::string, std::vector<Posting>> exact_;     // normalized label/synonym
  std::unordered_map<std::string, std::vector<std::uint32_t>> identifiers_;
  std::vector<LabelEntry> labels_;  // sorted by normalized text; answers prefix queries
};

}  // namespace ontolookup::search
