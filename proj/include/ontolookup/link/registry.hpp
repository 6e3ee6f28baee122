#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ontolookup::link {

struct RegistryEntry {
  std::string prefix;       // canonical, lowercase
  std::string uri_pattern;  // exactly one "$1"
  std::optional<std::string> resolver_template;
  std::vector<std::string> synonyms;

  std::string_view stem() const;    // text before "$1"
  std::string_view suffix() const;  // text after "$1"
};

struct Curie {
  std::string prefix;  // lowercase
  std::string local_id;

  // PREFIX:local_id
  std::string display() const;

  friend bool operator==(const Curie&, const Curie&) = default;
};

class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Registry {
 public:
  Registry() = default;

  // Throws RegistryError on duplicate prefixes/synonyms/stems or a pattern
  // without exactly one "$1".
  static Registry from_entries(std::vector<RegistryEntry> entries);
  static Registry parse(std::string_view json_text);
  static Registry load(const std::filesystem::path& path);

  std::optional<Curie> compress(std::string_view iri) const;
  std::optional<std::string> expand(const Curie& curie) const;
  std::optional<std::string> expand(std::string_view curie_text) const;
  std::optional<std::string> external_link(const Curie& curie) const;

  // "prefix:rest" with a registered prefix or synonym, else none.
  std::optional<Curie> parse_curie(std::string_view text) const;

  const RegistryEntry* find(std::string_view prefix) const;
  const std::vector<RegistryEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  std::string to_json() const;

 private:
  std::vector<RegistryEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_prefix_;  // lowercase prefix or synonym
  std::unordered_map<std::string, std::size_t> by_stem_;
  std::vector<std::size_t> stem_lengths_;  // distinct, descending
};

struct LinkedXref {
  std::string raw;
  std::optional<Curie> curie;
  std::optional<std::string> url;
};

LinkedXref link_xref(std::string_view raw, const Registry& registry);
std::vector<LinkedXref> link_xrefs(std::span<const std::string> raw, const Registry& registry);

struct ConvertedRegistry {
  std::vector<RegistryEntry> entries;
  std::vector<std::string> warnings;
};

// Accepts either our own array format or a Bioregistry-style export (an
// object keyed by prefix with `uri_format`). Conflicting entries are dropped
// with a warning so the result always loads.
ConvertedRegistry convert_registry_export(std::string_view json_text);

}  // namespace ontolookup::link
