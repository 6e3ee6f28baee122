#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "ontolookup/link/registry.hpp"
#include "ontolookup/load/config.hpp"

namespace ontolookup::load {

using LanguageMap = std::map<std::string, std::vector<std::string>>;

struct HierarchyEdge {
  std::string relation;  // property IRI of an existential restriction
  std::string target;

  friend bool operator==(const HierarchyEdge&, const HierarchyEdge&) = default;
  friend auto operator<=>(const HierarchyEdge&, const HierarchyEdge&) = default;
};

struct QueryableFields {
  LanguageMap labels;
  LanguageMap synonyms;
  LanguageMap definitions;
  bool is_obsolete = false;
  std::vector<std::string> direct_parents;  // named superclasses
  std::string short_form;
  // Annotation property CURIE (lowercase prefix) or IRI -> stringified values.
  std::map<std::string, std::vector<std::string>> annotation_fields;
  // subClassOf (p some C) with p among the hierarchical properties.
  std::vector<HierarchyEdge> hierarchy;

  friend bool operator==(const QueryableFields&, const QueryableFields&) = default;
};

// A pure function of the lossless value.
QueryableFields extract(const nlohmann::json& lossless, const OntologyConfig& config,
                        const link::Registry& registry);

nlohmann::json to_json(const QueryableFields& fields);
QueryableFields fields_from_json(const nlohmann::json& j);

// Key used for a property in annotation_fields.
std::string field_key(const std::string& property_iri, const link::Registry& registry);

}  // namespace ontolookup::load
