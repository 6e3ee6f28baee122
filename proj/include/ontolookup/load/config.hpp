#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ontolookup::load {

struct OntologyConfig {
  std::string id;  // [a-z0-9_]+
  std::string title;
  std::string source;  // path (relative to the config file) or URL
  std::vector<std::string> base_iris;
  std::string preferred_prefix;
  std::vector<std::string> label_properties;
  std::vector<std::string> synonym_properties;
  std::vector<std::string> definition_properties;
  std::vector<std::string> hierarchical_properties;
  std::string default_language = "en";
  // owl:imports IRI -> location, consulted before fetching the IRI itself.
  std::map<std::string, std::string> import_locations;
};

struct ConfigSet {
  std::vector<OntologyConfig> ontologies;  // file order
  std::optional<std::string> registry;     // path or URL of registry.json
  std::filesystem::path base_dir;          // relative sources resolve here

  const OntologyConfig* find(std::string_view id) const;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string ontology_id, const std::string& message);
  const std::string& ontology_id() const { return ontology_id_; }

 private:
  std::string ontology_id_;
};

ConfigSet parse_config(std::string_view json_text, std::filesystem::path base_dir = {});
ConfigSet load_config(const std::filesystem::path& file);

bool valid_ontology_id(std::string_view id);

// Serializes one entry with defaults made explicit.
std::string config_to_json(const OntologyConfig& config);

// The config whose base IRIs hold the longest prefix of `iri`; ties go to the
// smallest id.
std::optional<std::string> assign_defining_ontology(std::string_view iri,
                                                    const std::vector<OntologyConfig>& configs);

}  // namespace ontolookup::load
