#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "ontolookup/api/dataset.hpp"

namespace ontolookup::api {

// Percent-encodes every byte outside A-Z a-z 0-9 - . _ ~.
std::string percent_encode(std::string_view text);
// Strict inverse of percent_encode; none on a malformed escape.
std::optional<std::string> percent_decode(std::string_view text);
// IRI path segment form: percent_encode applied twice.
std::string encode_iri_segment(std::string_view iri);

struct PageRequest {
  std::size_t page = 0;
  std::size_t size = 20;
};

// {page, size, total_elements, total_pages, items}
nlohmann::json page_json(const PageRequest& request, std::size_t total, nlohmann::json items);

nlohmann::json ontology_summary(const load::OntologyReport& report);
nlohmann::json ontology_detail(const load::OntologyReport& report, const OntologyData* data);

// Language actually used for `map`: requested, else default, else the first
// tag holding a value, else the default.
std::string resolve_language(const load::LanguageMap& map, std::string_view requested,
                             std::string_view default_language);

// Full entity view. `lang` empty means the ontology default.
nlohmann::json v2_entity_view(const Dataset& dataset, const OntologyData& ontology,
                              const load::EntityRecord& record, std::string_view lang);

// Flat compatibility view; link URLs start with `base_url` (scheme://host).
nlohmann::json v1_entity_view(const Dataset& dataset, const OntologyData& ontology,
                              const load::EntityRecord& record, std::string_view base_url);

// Hierarchy list item. `lang` other than the ontology default re-reads the
// label from the record.
nlohmann::json node_view(const Dataset& dataset, const OntologyData& ontology, const graph::GraphNode& node,
                         std::string_view lang);

}  // namespace ontolookup::api
