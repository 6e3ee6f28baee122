#include "ontolookup/load/extract.hpp"

#include <algorithm>
#include <set>

#include "ontolookup/owl/interpret.hpp"
#include "ontolookup/rdf/iri.hpp"
#include "ontolookup/rdf/vocab.hpp"

namespace ontolookup::load {

using nlohmann::json;
namespace v = vocab;

namespace {

const json* values_of(const json& node, std::string_view predicate) {
  auto it = node.find(std::string(predicate));
  if (it == node.end() || !it->is_array()) return nullptr;
  return &*it;
}

struct LiteralView {
  std::string lexical;
  std::string language;  // empty when untagged
  std::string datatype;
};

std::optional<LiteralView> as_literal(const json& value) {
  if (value.is_string()) return LiteralView{value.get<std::string>(), {}, std::string(v::xsd::string)};
  if (!value.is_object() || !value.contains("@value")) return std::nullopt;
  LiteralView out{value["@value"].get<std::string>(), {}, std::string(v::xsd::string)};
  if (value.contains("@lang")) {
    out.language = value["@lang"].get<std::string>();
    out.datatype = v::rdf::lang_string;
  } else if (value.contains("@datatype")) {
    out.datatype = value["@datatype"].get<std::string>();
  }
  return out;
}

std::optional<std::string> as_iri(const json& value) {
  if (value.is_object() && value.contains("@iri")) return value["@iri"].get<std::string>();
  return std::nullopt;
}

void bucket(const json& node, const std::vector<std::string>& properties, const std::string& default_language,
            LanguageMap& out) {
  for (const auto& p : properties) {
    const json* values = values_of(node, p);
    if (!values) continue;
    for (const auto& value : *values) {
      auto literal = as_literal(value);
      if (!literal) continue;
      out[literal->language.empty() ? default_language : literal->language].push_back(literal->lexical);
    }
  }
  for (auto& [lang, list] : out) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

bool is_true(const json& value) {
  auto literal = as_literal(value);
  if (!literal) return false;
  if (literal->lexical == "true") return true;
  return literal->lexical == "1" && literal->datatype == v::xsd::boolean;
}

// {onProperty: [p], someValuesFrom: [C]} with an optional owl:Restriction type.
std::optional<HierarchyEdge> existential(const json& value) {
  if (!value.is_object() || value.contains("@list") || value.contains("@ref") || value.contains("@iri") ||
      value.contains("@value")) {
    return std::nullopt;
  }
  std::optional<std::string> property, filler;
  for (const auto& [key, values] : value.items()) {
    if (!key.empty() && key[0] == '@') continue;
    if (!values.is_array() || values.size() != 1) return std::nullopt;
    if (key == v::owl::on_property) {
      property = as_iri(values[0]);
    } else if (key == v::owl::some_values_from) {
      filler = as_iri(values[0]);
    } else if (key == v::rdf::type) {
      if (as_iri(values[0]) != std::optional<std::string>(v::owl::restriction)) return std::nullopt;
    } else {
      return std::nullopt;
    }
  }
  if (!property || !filler) return std::nullopt;
  return HierarchyEdge{*property, *filler};
}

}  // namespace

std::string field_key(const std::string& property_iri, const link::Registry& registry) {
  auto curie = registry.compress(property_iri);
  if (!curie) return property_iri;
  return curie->prefix + ":" + curie->local_id;
}

QueryableFields extract(const json& lossless, const OntologyConfig& config, const link::Registry& registry) {
  QueryableFields f;
  std::string iri = lossless.value("@id", "");
  f.short_form = std::string(rdf::iri_short_form(iri));
  bucket(lossless, config.label_properties, config.default_language, f.labels);
  bucket(lossless, config.synonym_properties, config.default_language, f.synonyms);
  bucket(lossless, config.definition_properties, config.default_language, f.definitions);

  if (const json* values = values_of(lossless, v::owl::deprecated)) {
    f.is_obsolete = std::any_of(values->begin(), values->end(), is_true);
  }

  std::set<std::string> parents;
  std::set<HierarchyEdge> edges;
  std::set<std::string> hierarchical(config.hierarchical_properties.begin(), config.hierarchical_properties.end());
  if (const json* values = values_of(lossless, v::rdfs::sub_class_of)) {
    for (const auto& value : *values) {
      if (auto target = as_iri(value)) {
        if (parents.insert(*target).second) f.direct_parents.push_back(*target);
      } else if (auto edge = existential(value); edge && hierarchical.contains(edge->relation)) {
        if (edges.insert(*edge).second) f.hierarchy.push_back(*edge);
      }
    }
  }

  for (const auto& [key, values] : lossless.items()) {
    if (key.empty() || key[0] == '@' || owl::is_structural_predicate(key) || !values.is_array()) continue;
    std::vector<std::string> strings;
    for (const auto& value : values) {
      if (auto literal = as_literal(value)) {
        strings.push_back(literal->lexical);
      } else if (auto target = as_iri(value)) {
        strings.push_back(*target);
      }
    }
    auto& field = f.annotation_fields[field_key(key, registry)];
    field.insert(field.end(), strings.begin(), strings.end());
  }
  return f;
}

json to_json(const QueryableFields& f) {
  json hierarchy = json::array();
  for (const auto& e : f.hierarchy) hierarchy.push_back({{"relation", e.relation}, {"target", e.target}});
  return {{"labels", f.labels},
          {"synonyms", f.synonyms},
          {"definitions", f.definitions},
          {"is_obsolete", f.is_obsolete},
          {"direct_parents", f.direct_parents},
          {"short_form", f.short_form},
          {"annotation_fields", f.annotation_fields},
          {"hierarchy", std::move(hierarchy)}};
}

QueryableFields fields_from_json(const json& j) {
  QueryableFields f;
  f.labels = j.at("labels").get<LanguageMap>();
  f.synonyms = j.at("synonyms").get<LanguageMap>();
  f.definitions = j.at("definitions").get<LanguageMap>();
  f.is_obsolete = j.at("is_obsolete").get<bool>();
  f.direct_parents = j.at("direct_parents").get<std::vector<std::string>>();
  f.short_form = j.at("short_form").get<std::string>();
  f.annotation_fields = j.at("annotation_fields").get<std::map<std::string, std::vector<std::string>>>();
  for (const auto& e : j.at("hierarchy")) {
    f.hierarchy.push_back({e.at("relation").get<std::string>(), e.at("target").get<std::string>()});
  }
  return f;
}

}  // namespace ontolookup::load
