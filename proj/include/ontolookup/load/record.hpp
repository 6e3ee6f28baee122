#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ontolookup/link/registry.hpp"
#include "ontolookup/load/config.hpp"
#include "ontolookup/load/extract.hpp"
#include "ontolookup/owl/model.hpp"

namespace ontolookup::load {

struct EntityRecord {
  std::string ontology_id;
  std::string iri;
  std::optional<std::string> curie;  // display form, PREFIX:local
  std::string kind;                  // owl::to_string(EntityKind)
  bool imported = false;
  std::optional<std::string> defining_ontology;
  nlohmann::json lossless;
  QueryableFields extracted;
  nlohmann::json axioms;       // axioms_to_json
  nlohmann::json annotations;  // annotations_to_json
  nlohmann::json dangling;     // [{"triple": N-Triples line, "reason"}]
};

nlohmann::json record_to_json(const EntityRecord& record);
EntityRecord record_from_json(const nlohmann::json& j);

// One line of records.jsonl, newline included.
std::string record_line(const EntityRecord& record);

// `configs` is the whole config set; the defining ontology depends on it.
EntityRecord make_record(const owl::OwlEntity& entity, const OntologyConfig& config,
                         const std::vector<OntologyConfig>& configs, const link::Registry& registry,
                         const std::vector<owl::DanglingTriple>& dangling);

// Label shown where a single string is needed: the smallest label in the
// default language, else in the first language that has one.
std::optional<std::string> default_label(const QueryableFields& fields, const std::string& default_language);

}  // namespace ontolookup::load
