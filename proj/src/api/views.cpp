#include "ontolookup/api/views.hpp"

#include <set>

namespace ontolookup::api {

using nlohmann::json;

std::string percent_encode(std::string_view text) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  out.reserve(text.size() * 3);
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

std::optional<std::string> percent_decode(std::string_view text) {
  auto digit = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out += text[i];
      continue;
    }
    if (i + 2 >= text.size()) return std::nullopt;
    int hi = digit(text[i + 1]), lo = digit(text[i + 2]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

std::string encode_iri_segment(std::string_view iri) { return percent_encode(percent_encode(iri)); }

json page_json(const PageRequest& request, std::size_t total, json items) {
  return {{"page", request.page},
          {"size", request.size},
          {"total_elements", total},
          {"total_pages", (total + request.size - 1) / request.size},
          {"items", std::move(items)}};
}

namespace {

json optional_json(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

json counts_json(const load::OntologyReport& r) {
  return {{"entities", r.entities}, {"classes", r.classes}, {"properties", r.properties}, {"individuals", r.individuals}};
}

const std::vector<std::string>& values_in(const load::LanguageMap& map, const std::string& lang) {
  static const std::vector<std::string> kEmpty;
  auto it = map.find(lang);
  return it == map.end() ? kEmpty : it->second;
}

std::vector<std::string> languages_of(const load::QueryableFields& f) {
  std::set<std::string> tags;
  for (const auto* map : {&f.labels, &f.synonyms, &f.definitions}) {
    for (const auto& [lang, values] : *map) {
      if (!values.empty()) tags.insert(lang);
    }
  }
  return {tags.begin(), tags.end()};
}

std::optional<std::string> label_in(const load::EntityRecord& record, std::string_view lang,
                                    std::string_view default_language) {
  const auto& labels = record.extracted.labels;
  const auto& values = values_in(labels, resolve_language(labels, lang, default_language));
  if (values.empty()) return std::nullopt;
  return values.front();
}

void collect_iris(const json& value, std::set<std::string>& out) {
  if (value.is_object()) {
    for (const auto& [key, v] : value.items()) {
      if ((key == "iri" || key == "@iri" || key == "property") && v.is_string()) {
        out.insert(v.get<std::string>());
      } else if (key.find("://") != std::string::npos) {
        // Reified payload maps are keyed by property IRI.
        out.insert(key);
        collect_iris(v, out);
      } else {
        collect_iris(v, out);
      }
    }
  } else if (value.is_array()) {
    for (const auto& v : value) collect_iris(v, out);
  }
}

json linked_entities(const Dataset& dataset, const OntologyData& ontology, const load::EntityRecord& record,
                     std::string_view lang) {
  std::set<std::string> iris;
  collect_iris(record.axioms, iris);
  collect_iris(record.annotations, iris);
  for (const auto& p : record.extracted.direct_parents) iris.insert(p);
  for (const auto& e : record.extracted.hierarchy) {
    iris.insert(e.relation);
    iris.insert(e.target);
  }
  json out = json::object();
  for (const auto& iri : iris) {
    auto holders = dataset.holders(iri);
    if (holders.empty()) continue;
    const OntologyData* chosen = nullptr;
    std::optional<load::EntityRecord> linked;
    for (const auto* h : holders) {
      if (h == &ontology) {
        chosen = h;
        linked = h->record(iri);
        break;
      }
    }
    // Elsewhere, the defining ontology's copy wins over imported ones.
    if (!chosen) {
      for (const auto* h : holders) {
        auto r = h->record(iri);
        if (!linked || (linked->imported && !r->imported)) {
          chosen = h;
          linked = std::move(r);
        }
      }
    }
    out[iri] = {{"label", optional_json(label_in(*linked, lang, chosen->config().default_language))},
                {"curie", optional_json(linked->curie)},
                {"defining_ontology", optional_json(linked->defining_ontology)},
                {"ontology_id", chosen->id()},
                {"kind", linked->kind}};
  }
  return out;
}

bool has_subclass_children(const OntologyData& ontology, const std::string& iri) {
  const auto& g = ontology.graph();
  return g.contains(iri) && g.node(iri, graph::RelationFilter::subclass_only()).has_children;
}

}  // namespace

json ontology_summary(const load::OntologyReport& r) {
  return {{"id", r.id},
          {"title", r.title},
          {"status", r.status},
          {"ontology_iri", optional_json(r.ontology_iri)},
          {"counts", counts_json(r)},
          {"languages", r.languages}};
}

json ontology_detail(const load::OntologyReport& r, const OntologyData* data) {
  json j = ontology_summary(r);
  j["error"] = optional_json(r.error);
  j["config"] = r.config;
  j["default_language"] = r.config.value("default_language", "en");
  j["documents"] = r.documents;
  j["warnings"] = r.warnings;
  j["triples"] = {{"parsed", r.parsed_triples}, {"consumed", r.consumed_triples}, {"dangling", r.dangling_triples}};
  j["annotations"] = data ? data->header().value("annotations", json::array()) : json::array();
  return j;
}

std::string resolve_language(const load::LanguageMap& map, std::string_view requested,
                             std::string_view default_language) {
  for (std::string_view tag : {requested, default_language}) {
    auto it = map.find(std::string(tag));
    if (it != map.end() && !it->second.empty()) return it->first;
  }
  for (const auto& [lang, values] : map) {
    if (!values.empty()) return lang;
  }
  return std::string(default_language);
}

json v2_entity_view(const Dataset& dataset, const OntologyData& ontology, const load::EntityRecord& record,
                    std::string_view lang) {
  const std::string& default_language = ontology.config().default_language;
  std::string requested = lang.empty() ? default_language : std::string(lang);
  const auto& f = record.extracted;
  std::string label_lang = resolve_language(f.labels, requested, default_language);
  const auto& labels = values_in(f.labels, label_lang);

  json hierarchy = json::array();
  for (const auto& e : f.hierarchy) hierarchy.push_back({{"relation", e.relation}, {"target", e.target}});

  return {{"iri", record.iri},
          {"curie", optional_json(record.curie)},
          {"ontology_id", record.ontology_id},
          {"kind", record.kind},
          {"imported", record.imported},
          {"defining_ontology", optional_json(record.defining_ontology)},
          {"is_obsolete", f.is_obsolete},
          {"short_form", f.short_form},
          {"lang", requested},
          {"label_language", label_lang},
          {"languages", languages_of(f)},
          {"label", labels.empty() ? json(nullptr) : json(labels.front())},
          {"labels", labels},
          {"synonyms", values_in(f.synonyms, resolve_language(f.synonyms, requested, default_language))},
          {"definitions", values_in(f.definitions, resolve_language(f.definitions, requested, default_language))},
          {"direct_parents", f.direct_parents},
          {"hierarchy", std::move(hierarchy)},
          {"annotation_fields", f.annotation_fields},
          {"has_children", has_subclass_children(ontology, record.iri)},
          {"axioms", record.axioms},
          {"annotations", record.annotations},
          {"dangling", record.dangling},
          {"extracted", load::to_json(f)},
          {"lossless", record.lossless},
          {"linked_entities", linked_entities(dataset, ontology, record, requested)}};
}

json v1_entity_view(const Dataset&, const OntologyData& ontology, const load::EntityRecord& record,
                    std::string_view base_url) {
  const std::string& default_language = ontology.config().default_language;
  const auto& f = record.extracted;
  std::string self = std::string(base_url) + "/api/ontologies/" + ontology.id() + "/terms/" +
                     encode_iri_segment(record.iri);
  auto link = [](std::string href) { return json{{"href", std::move(href)}}; };
  return {{"iri", record.iri},
          {"label", optional_json(load::default_label(f, default_language))},
          {"description", values_in(f.definitions, resolve_language(f.definitions, default_language, default_language))},
          {"synonyms", values_in(f.synonyms, resolve_language(f.synonyms, default_language, default_language))},
          {"obo_id", optional_json(record.curie)},
          {"short_form", f.short_form},
          {"ontology_name", ontology.id()},
          {"ontology_prefix", ontology.config().preferred_prefix},
          {"type", record.kind},
          {"is_obsolete", f.is_obsolete},
          {"is_defining_ontology", !record.imported},
          {"has_children", has_subclass_children(ontology, record.iri)},
          {"_links",
           {{"self", link(self)},
            {"parents", link(self + "/parents")},
            {"children", link(self + "/children")},
            {"ancestors", link(self + "/ancestors")},
            {"descendants", link(self + "/descendants")}}}};
}

json node_view(const Dataset& dataset, const OntologyData& ontology, const graph::GraphNode& node,
               std::string_view lang) {
  const std::string& default_language = ontology.config().default_language;
  json label = node.label.empty() ? json(nullptr) : json(node.label);
  json curie = nullptr;
  if (auto c = dataset.registry().compress(node.iri)) curie = c->display();
  if (!lang.empty() && lang != default_language) {
    if (auto record = ontology.record(node.iri)) label = optional_json(label_in(*record, lang, default_language));
  }
  return {{"iri", node.iri},
          {"ontology_id", ontology.id()},
          {"label", std::move(label)},
          {"curie", std::move(curie)},
          {"is_obsolete", node.is_obsolete},
          {"has_children", node.has_children},
          {"defining_ontology", optional_json(node.defining_ontology)},
          {"imported", node.defining_ontology.has_value() && *node.defining_ontology != ontology.id()}};
}

}  // namespace ontolookup::api
