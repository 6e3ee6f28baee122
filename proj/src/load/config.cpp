#include "ontolookup/load/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "ontolookup/rdf/vocab.hpp"

namespace ontolookup::load {

using nlohmann::json;

ConfigError::ConfigError(std::string ontology_id, const std::string& message)
    : std::runtime_error(ontology_id.empty() ? message : ontology_id + ": " + message),
      ontology_id_(std::move(ontology_id)) {}

const OntologyConfig* ConfigSet::find(std::string_view id) const {
  for (const auto& c : ontologies) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

bool valid_ontology_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

namespace {

std::vector<std::string> iri_list(const json& entry, const char* key, const std::string& id,
                                  std::vector<std::string> fallback) {
  if (!entry.contains(key)) return fallback;
  const auto& v = entry[key];
  if (!v.is_array()) throw ConfigError(id, std::string(key) + " must be an array of IRIs");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string() || item.get<std::string>().empty()) {
      throw ConfigError(id, std::string(key) + " must contain non-empty strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string optional_string(const json& entry, const char* key, const std::string& id,
                            std::string fallback = {}) {
  if (!entry.contains(key) || entry[key].is_null()) return fallback;
  if (!entry[key].is_string()) throw ConfigError(id, std::string(key) + " must be a string");
  return entry[key].get<std::string>();
}

OntologyConfig parse_entry(const json& entry, std::size_t position) {
  std::string where = "ontologies[" + std::to_string(position) + "]";
  if (!entry.is_object()) throw ConfigError(where, "entry is not an object");
  if (!entry.contains("id") || !entry["id"].is_string()) throw ConfigError(where, "missing id");
  OntologyConfig c;
  c.id = entry["id"].get<std::string>();
  if (!valid_ontology_id(c.id)) throw ConfigError(c.id, "id must match [a-z0-9_]+");
  c.source = optional_string(entry, "source", c.id);
  if (c.source.empty()) throw ConfigError(c.id, "missing source");
  c.title = optional_string(entry, "title", c.id, c.id);
  c.base_iris = iri_list(entry, "base_iris", c.id, {});
  if (c.base_iris.empty()) throw ConfigError(c.id, "base_iris must be a non-empty array");
  std::string upper = c.id;
  for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  c.preferred_prefix = optional_string(entry, "preferred_prefix", c.id, upper);
  c.label_properties = iri_list(entry, "label_properties", c.id, {std::string(vocab::rdfs::label)});
  c.synonym_properties =
      iri_list(entry, "synonym_properties", c.id, {std::string(vocab::oio::has_exact_synonym)});
  c.definition_properties = iri_list(entry, "definition_properties", c.id,
                                     {std::string(vocab::obo::definition), std::string(vocab::rdfs::comment)});
  c.hierarchical_properties =
      iri_list(entry, "hierarchical_properties", c.id, {std::string(vocab::obo::part_of)});
  c.default_language = optional_string(entry, "default_language", c.id, "en");
  for (char& ch : c.default_language) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (c.default_language.empty()) throw ConfigError(c.id, "default_language must not be empty");
  if (entry.contains("import_locations")) {
    const auto& m = entry["import_locations"];
    if (!m.is_object()) throw ConfigError(c.id, "import_locations must be an object");
    for (const auto& [iri, location] : m.items()) {
      if (!location.is_string()) throw ConfigError(c.id, "import_locations values must be strings");
      c.import_locations[iri] = location.get<std::string>();
    }
  }
  return c;
}

}  // namespace

ConfigSet parse_config(std::string_view json_text, std::filesystem::path base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError({}, std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("ontologies") || !doc["ontologies"].is_array()) {
    throw ConfigError({}, "config must be an object with an \"ontologies\" array");
  }
  ConfigSet set;
  set.base_dir = std::move(base_dir);
  if (doc.contains("registry") && !doc["registry"].is_null()) {
    if (!doc["registry"].is_string()) throw ConfigError({}, "registry must be a string");
    set.registry = doc["registry"].get<std::string>();
  }
  std::set<std::string> ids;
  std::size_t position = 0;
  for (const auto& entry : doc["ontologies"]) {
    auto c = parse_entry(entry, position++);
    if (!ids.insert(c.id).second) throw ConfigError(c.id, "duplicate id");
    set.ontologies.push_back(std::move(c));
  }
  return set;
}

ConfigSet load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError({}, "cannot read config " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::filesystem::absolute(file).parent_path());
}

std::string config_to_json(const OntologyConfig& c) {
  json j = {{"id", c.id},
            {"title", c.title},
            {"source", c.source},
            {"base_iris", c.base_iris},
            {"preferred_prefix", c.preferred_prefix},
            {"label_properties", c.label_properties},
            {"synonym_properties", c.synonym_properties},
            {"definition_properties", c.definition_properties},
            {"hierarchical_properties", c.hierarchical_properties},
            {"default_language", c.default_language}};
  if (!c.import_locations.empty()) j["import_locations"] = c.import_locations;
  return j.dump();
}

std::optional<std::string> assign_defining_ontology(std::string_view iri,
                                                    const std::vector<OntologyConfig>& configs) {
  const OntologyConfig* best = nullptr;
  std::size_t best_length = 0;
  for (const auto& c : configs) {
    for (const auto& base : c.base_iris) {
      if (!iri.starts_with(base)) continue;
      if (!best || base.size() > best_length || (base.size() == best_length && c.id < best->id)) {
        best = &c;
        best_length = base.size();
      }
    }
  }
  if (!best) return std::nullopt;
  return best->id;
}

}  // namespace ontolookup::load
