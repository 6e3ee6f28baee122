#include <nlohmann/json.hpp>

#include "ontolookup/api/server.hpp"

namespace ontolookup::api {

using nlohmann::json;

namespace {

json query(const char* name, const char* type, const char* description, bool required = false) {
  return {{"name", name}, {"in", "query"}, {"required", required}, {"description", description},
          {"schema", {{"type", type}}}};
}

json path_param(const char* name, const char* description) {
  return {{"name", name}, {"in", "path"}, {"required", true}, {"description", description},
          {"schema", {{"type", "string"}}}};
}

json get(const char* summary, json parameters) {
  return {{"get",
           {{"summary", summary},
            {"parameters", std::move(parameters)},
            {"responses",
             {{"200", {{"description", "OK"}}},
              {"400", {{"description", "Invalid parameter"}}},
              {"404", {{"description", "Not found"}}},
              {"503", {{"description", "No dataset loaded"}}}}}}}};
}

}  // namespace

std::string openapi_document() {
  json page = json::array({query("page", "integer", "0-based page number"),
                           query("size", "integer", "Page size, 1..500")});
  auto with = [&](std::initializer_list<json> extra) {
    json p = page;
    for (const auto& e : extra) p.push_back(e);
    return p;
  };
  json id = path_param("id", "Ontology id, lowercase");
  json iri = path_param("iri", "Entity IRI, URL-encoded twice: http%253A%252F%252Fpurl.obolibrary.org%252Fobo%252FUBERON_0002048");
  json lang = query("lang", "string", "Language tag; falls back to the ontology default, then any language");
  json relations = query("relations", "string", "subclass_of (default), all, or comma-separated property IRIs");

  json paths;
  paths["/health"] = get("Service status, dataset version and ontology count", json::array());
  paths["/api/v2/ontologies"] = get("Ontology summaries sorted by id", page);
  paths["/api/v2/ontologies/{id}"] = get("Ontology detail: configuration, counts, languages", json::array({id}));
  paths["/api/v2/ontologies/{id}/roots"] =
      get("Top-level classes", with({id, relations, lang, query("includeObsolete", "boolean", "Include obsolete roots")}));
  for (const char* kind : {"classes", "properties", "individuals", "entities"}) {
    std::string base = std::string("/api/v2/ontologies/{id}/") + kind + "/{iri}";
    paths[base] = get("Entity view with axioms, annotations and linked entities", json::array({id, iri, lang}));
    for (const char* dir : {"parents", "children", "ancestors", "descendants"}) {
      paths[base + "/" + dir] = get("Hierarchy neighbours tagged with their defining ontology",
                                    with({id, iri, relations, lang}));
    }
  }
  paths["/api/v2/search"] = get("Ranked search",
                                with({query("q", "string", "Query text", true), query("ontology", "string", "Restrict to one ontology"),
                                      lang, query("exact", "boolean", "Exact label or synonym matches only"),
                                      query("includeObsolete", "boolean", "Include obsolete entities")}));
  paths["/api/v2/suggest"] = get("Label completions for a prefix",
                                 json::array({query("q", "string", "Prefix", true), query("ontology", "string", "Restrict to one ontology"),
                                              lang, query("limit", "integer", "1..500, default 10")}));
  paths["/api/ontologies/{id}/terms"] =
      get("Flat term views; with iri= a single term", with({id, query("iri", "string", "Entity IRI")}));
  paths["/api/ontologies/{id}/terms/{iri}"] = get("Flat term view", json::array({id, iri}));
  for (const char* dir : {"parents", "children", "ancestors", "descendants"}) {
    paths[std::string("/api/ontologies/{id}/terms/{iri}/") + dir] = get("Flat term views along subClassOf", with({id, iri}));
  }

  json doc = {{"openapi", "3.0.3"},
              {"info", {{"title", "ontolookup"}, {"version", "1"}}},
              {"paths", std::move(paths)},
              {"components",
               {{"schemas",
                 {{"Problem",
                   {{"type", "object"},
                    {"properties",
                     {{"status", {{"type", "integer"}}},
                      {"error", {{"type", "string"}}},
                      {"message", {{"type", "string"}}},
                      {"path", {{"type", "string"}}}}}}}}}}}};
  return doc.dump(2);
}

}  // namespace ontolookup::api
