#include "ontolookup/load/record.hpp"

#include "ontolookup/load/lossless.hpp"
#include "ontolookup/rdf/ntriples_writer.hpp"

namespace ontolookup::load {

using nlohmann::json;

json record_to_json(const EntityRecord& r) {
  return {{"ontology_id", r.ontology_id},
          {"iri", r.iri},
          {"curie", r.curie ? json(*r.curie) : json(nullptr)},
          {"kind", r.kind},
          {"imported", r.imported},
          {"defining_ontology", r.defining_ontology ? json(*r.defining_ontology) : json(nullptr)},
          {"lossless", r.lossless},
          {"extracted", to_json(r.extracted)},
          {"axioms", r.axioms},
          {"annotations", r.annotations},
          {"dangling", r.dangling}};
}

EntityRecord record_from_json(const json& j) {
  EntityRecord r;
  r.ontology_id = j.at("ontology_id").get<std::string>();
  r.iri = j.at("iri").get<std::string>();
  if (!j.at("curie").is_null()) r.curie = j["curie"].get<std::string>();
  r.kind = j.at("kind").get<std::string>();
  r.imported = j.at("imported").get<bool>();
  if (!j.at("defining_ontology").is_null()) r.defining_ontology = j["defining_ontology"].get<std::string>();
  r.lossless = j.at("lossless");
  r.extracted = fields_from_json(j.at("extracted"));
  r.axioms = j.at("axioms");
  r.annotations = j.at("annotations");
  r.dangling = j.at("dangling");
  return r;
}

std::string record_line(const EntityRecord& record) { return record_to_json(record).dump() + "\n"; }

EntityRecord make_record(const owl::OwlEntity& entity, const OntologyConfig& config,
                         const std::vector<OntologyConfig>& configs, const link::Registry& registry,
                         const std::vector<owl::DanglingTriple>& dangling) {
  EntityRecord r;
  r.ontology_id = config.id;
  r.iri = entity.iri;
  if (auto c = registry.compress(entity.iri)) r.curie = c->display();
  r.kind = owl::to_string(entity.kind);
  r.defining_ontology = assign_defining_ontology(entity.iri, configs);
  r.imported = r.defining_ontology && *r.defining_ontology != config.id;
  r.lossless = to_lossless(entity);
  r.extracted = extract(r.lossless, config, registry);
  r.axioms = axioms_to_json(entity);
  r.annotations = annotations_to_json(entity);
  r.dangling = json::array();
  for (const auto& d : dangling) {
    r.dangling.push_back({{"triple", rdf::to_ntriples(d.triple)}, {"reason", d.reason}});
  }
  return r;
}

std::optional<std::string> default_label(const QueryableFields& fields, const std::string& default_language) {
  if (auto it = fields.labels.find(default_language); it != fields.labels.end() && !it->second.empty()) {
    return it->second.front();
  }
  for (const auto& [lang, values] : fields.labels) {
    if (!values.empty()) return values.front();
  }
  return std::nullopt;
}

}  // namespace ontolookup::load
