#include "ontolookup/load/dataload.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <chrono>
#include <ctime>
#include <map>
#include <set>
#include <thread>

#include "ontolookup/load/closure.hpp"
#include "ontolookup/load/lossless.hpp"
#include "ontolookup/owl/interpret.hpp"
#include "ontolookup/rdf/ntriples_writer.hpp"

namespace ontolookup::load {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path manifest_path(const fs::path& dir) { return dir / "manifest.json"; }
fs::path records_path(const fs::path& dir, std::string_view id) { return dir / std::string(id) / "records.jsonl"; }
fs::path header_path(const fs::path& dir, std::string_view id) { return dir / std::string(id) / "ontology.json"; }
fs::path graph_path(const fs::path& dir, std::string_view id) { return dir / std::string(id) / "graph.bin"; }
fs::path index_path(const fs::path& dir, std::string_view id) {
  return dir / "index" / (std::string(id) + ".idx");
}
fs::path registry_path(const fs::path& dir) { return dir / "registry.json"; }

const OntologyReport* DatasetManifest::find(std::string_view id) const {
  for (const auto& o : ontologies) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

bool DatasetManifest::any_failed() const {
  return std::any_of(ontologies.begin(), ontologies.end(), [](const OntologyReport& o) { return o.status != "ok"; });
}

namespace {

json optional_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

std::optional<std::string> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::string>();
}

json report_to_json(const OntologyReport& r) {
  return {{"id", r.id},
          {"title", r.title},
          {"source", r.source},
          {"status", r.status},
          {"error", optional_string(r.error)},
          {"ontology_iri", optional_string(r.ontology_iri)},
          {"documents", r.documents},
          {"counts",
           {{"entities", r.entities},
            {"classes", r.classes},
            {"properties", r.properties},
            {"individuals", r.individuals}}},
          {"languages", r.languages},
          {"triples", {{"parsed", r.parsed_triples}, {"consumed", r.consumed_triples}, {"dangling", r.dangling_triples}}},
          {"warnings", r.warnings},
          {"content_hash", r.content_hash},
          {"duration_seconds", r.duration_seconds},
          {"config", r.config}};
}

OntologyReport report_from_json(const json& j) {
  OntologyReport r;
  r.id = j.at("id").get<std::string>();
  r.title = j.at("title").get<std::string>();
  r.source = j.at("source").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.error = read_optional(j, "error");
  r.ontology_iri = read_optional(j, "ontology_iri");
  r.documents = j.at("documents").get<std::vector<std::string>>();
  const auto& counts = j.at("counts");
  r.entities = counts.at("entities").get<std::size_t>();
  r.classes = counts.at("classes").get<std::size_t>();
  r.properties = counts.at("properties").get<std::size_t>();
  r.individuals = counts.at("individuals").get<std::size_t>();
  r.languages = j.at("languages").get<std::vector<std::string>>();
  const auto& triples = j.at("triples");
  r.parsed_triples = triples.at("parsed").get<std::size_t>();
  r.consumed_triples = triples.at("consumed").get<std::size_t>();
  r.dangling_triples = triples.at("dangling").get<std::size_t>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  r.content_hash = j.at("content_hash").get<std::string>();
  r.duration_seconds = j.at("duration_seconds").get<double>();
  r.config = j.at("config");
  return r;
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct OntologyOutput {
  OntologyReport report;
  std::string records;
  std::string header;
  std::string graph;
  std::string index;
};

OntologyOutput load_ontology(const OntologyConfig& config, const ConfigSet& configs, const link::Registry& registry,
                             const Fetcher& fetcher) {
  OntologyOutput out;
  auto& report = out.report;
  report.id = config.id;
  report.title = config.title;
  report.source = config.source;
  report.config = json::parse(config_to_json(config));

  DocumentSource source = [&](const std::string& reference) {
    auto it = config.import_locations.find(reference);
    return fetcher.fetch(it == config.import_locations.end() ? reference : it->second, configs.base_dir);
  };
  auto closure = import_closure(config.source, source);
  report.warnings = closure.warnings;
  std::vector<rdf::Triple> triples;
  for (auto& doc : closure.documents) {
    report.documents.push_back(doc.location);
    triples.insert(triples.end(), std::make_move_iterator(doc.triples.begin()),
                   std::make_move_iterator(doc.triples.end()));
  }
  auto ontology = owl::assemble(std::move(triples));

  std::map<std::string, std::vector<owl::DanglingTriple>> dangling_by_entity;
  json unattached = json::array();
  for (const auto& d : ontology.dangling) {
    if (!d.entity.empty()) {
      dangling_by_entity[d.entity].push_back(d);
    } else {
      unattached.push_back({{"triple", rdf::to_ntriples(d.triple)}, {"reason", d.reason}});
    }
  }
  static const std::vector<owl::DanglingTriple> kNone;
  auto dangling_of = [&](const std::string& iri) -> const std::vector<owl::DanglingTriple>& {
    auto it = dangling_by_entity.find(iri);
    return it == dangling_by_entity.end() ? kNone : it->second;
  };

  std::set<std::string> languages;
  std::vector<graph::NodeInput> nodes;
  std::vector<search::SearchDocument> documents;
  report.parsed_triples = ontology.input_triples;
  report.dangling_triples = ontology.dangling.size();
  for (const auto& entity : ontology.entities) {
    auto record = make_record(entity, config, configs.ontologies, registry, dangling_of(entity.iri));
    out.records += record_line(record);
    report.consumed_triples += entity.consumed.size();
    ++report.entities;
    if (entity.kind == owl::EntityKind::class_) ++report.classes;
    if (owl::is_property(entity.kind)) ++report.properties;
    if (entity.kind == owl::EntityKind::individual) ++report.individuals;
    for (const auto* map : {&record.extracted.labels, &record.extracted.synonyms, &record.extracted.definitions}) {
      for (const auto& [lang, values] : *map) {
        if (!values.empty()) languages.insert(lang);
      }
    }
    if (entity.kind == owl::EntityKind::ontology) continue;
    nodes.push_back(graph_node(record, config));
    documents.push_back(search_document(record, config));
  }
  report.languages.assign(languages.begin(), languages.end());

  json header = {{"ontology_id", config.id}, {"iri", nullptr}, {"lossless", nullptr}, {"annotations", json::array()}};
  if (ontology.header) {
    report.ontology_iri = ontology.header->iri;
    report.consumed_triples += ontology.header->consumed.size();
    header["iri"] = ontology.header->iri;
    header["lossless"] = to_lossless(*ontology.header);
    header["annotations"] = annotations_to_json(*ontology.header);
    json d = json::array();
    for (const auto& t : dangling_of(ontology.header->iri)) {
      d.push_back({{"triple", rdf::to_ntriples(t.triple)}, {"reason", t.reason}});
    }
    header["dangling"] = std::move(d);
  }
  header["unattached_dangling"] = std::move(unattached);
  header["documents"] = report.documents;
  out.header = header.dump(2) + "\n";
  out.graph = graph::GraphSegment::build(config.id, std::move(nodes)).serialize();
  out.index = search::SearchIndex::build(std::move(documents)).serialize();
  report.content_hash = fnv1a_hex(out.records + out.header + out.graph + out.index);
  report.status = "ok";
  return out;
}

void write_outputs(const fs::path& dir, const OntologyOutput& out) {
  fs::create_directories(dir / out.report.id);
  fs::create_directories(dir / "index");
  write_file_atomically(records_path(dir, out.report.id), out.records);
  write_file_atomically(header_path(dir, out.report.id), out.header);
  write_file_atomically(graph_path(dir, out.report.id), out.graph);
  write_file_atomically(index_path(dir, out.report.id), out.index);
}

void remove_outputs(const fs::path& dir, std::string_view id) {
  std::error_code ec;
  fs::remove_all(dir / std::string(id), ec);
  fs::remove(index_path(dir, id), ec);
}

}  // namespace

json manifest_to_json(const DatasetManifest& m) {
  json ontologies = json::array();
  for (const auto& o : m.ontologies) ontologies.push_back(report_to_json(o));
  return {{"format", m.format}, {"version", m.version}, {"created_at", m.created_at}, {"ontologies", ontologies}};
}

DatasetManifest manifest_from_json(const json& j) {
  DatasetManifest m;
  m.format = j.at("format").get<int>();
  if (m.format != 1) throw std::runtime_error("unsupported dataset format " + std::to_string(m.format));
  m.version = j.at("version").get<std::string>();
  m.created_at = j.at("created_at").get<std::string>();
  for (const auto& o : j.at("ontologies")) m.ontologies.push_back(report_from_json(o));
  return m;
}

DatasetManifest read_manifest(const fs::path& dir) {
  return manifest_from_json(json::parse(read_file(manifest_path(dir))));
}

graph::NodeInput graph_node(const EntityRecord& record, const OntologyConfig& config) {
  graph::NodeInput n;
  n.iri = record.iri;
  n.label = default_label(record.extracted, config.default_language).value_or("");
  n.is_obsolete = record.extracted.is_obsolete;
  n.is_class = record.kind == owl::to_string(owl::EntityKind::class_);
  n.defining_ontology = record.defining_ontology;
  for (const auto& p : record.extracted.direct_parents) n.edges.push_back({std::string(graph::kSubclassOf), p});
  for (const auto& e : record.extracted.hierarchy) n.edges.push_back({e.relation, e.target});
  return n;
}

search::SearchDocument search_document(const EntityRecord& record, const OntologyConfig& config) {
  search::SearchDocument d;
  d.iri = record.iri;
  d.ontology_id = record.ontology_id;
  d.curie = record.curie.value_or("");
  d.kind = record.kind;
  d.short_form = record.extracted.short_form;
  d.default_language = config.default_language;
  d.labels = record.extracted.labels;
  d.synonyms = record.extracted.synonyms;
  d.definitions = record.extracted.definitions;
  d.is_obsolete = record.extracted.is_obsolete;
  d.is_defining_ontology = !record.imported;
  d.annotation_fields = record.extracted.annotation_fields;
  return d;
}

DatasetManifest run_dataload(const ConfigSet& configs, const DataloadOptions& options) {
  const fs::path& dir = options.output_dir;
  fs::create_directories(dir);
  if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + " is not a directory");

  Fetcher fetcher(options.fetch);
  link::Registry registry;
  if (configs.registry) {
    auto doc = fetcher.fetch(*configs.registry, configs.base_dir);
    registry = link::Registry::parse(doc.bytes);
  }
  write_file_atomically(registry_path(dir), registry.to_json());

  std::vector<OntologyOutput> results(configs.ontologies.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.ontologies.size(); i = next++) {
      const auto& config = configs.ontologies[i];
      auto start = std::chrono::steady_clock::now();
      spdlog::info("loading {} from {}", config.id, config.source);
      try {
        results[i] = load_ontology(config, configs, registry, fetcher);
        write_outputs(dir, results[i]);
      } catch (const std::exception& e) {
        auto& r = results[i].report;
        r = OntologyReport{};
        r.id = config.id;
        r.title = config.title;
        r.source = config.source;
        r.config = json::parse(config_to_json(config));
        r.status = "failed";
        r.error = e.what();
        remove_outputs(dir, config.id);
        spdlog::error("{} failed: {}", config.id, e.what());
      }
      auto& r = results[i].report;
      r.duration_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      for (const auto& w : r.warnings) spdlog::warn("{}: {}", config.id, w);
      if (r.status == "ok") {
        spdlog::info("{}: {} entities in {:.3f}s", config.id, r.entities, r.duration_seconds);
      }
      // Output bytes are no longer needed once written.
      results[i].records.clear();
      results[i].records.shrink_to_fit();
    }
  };
  unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(configs.ontologies.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  DatasetManifest manifest;
  manifest.created_at = utc_now();
  for (auto& r : results) manifest.ontologies.push_back(std::move(r.report));
  std::sort(manifest.ontologies.begin(), manifest.ontologies.end(),
            [](const OntologyReport& a, const OntologyReport& b) { return a.id < b.id; });
  std::string digest = registry.to_json();
  for (const auto& o : manifest.ontologies) digest += o.id + ":" + o.status + ":" + o.content_hash + "\n";
  manifest.version = fnv1a_hex(digest);
  write_file_atomically(manifest_path(dir), manifest_to_json(manifest).dump(2) + "\n");
  return manifest;
}

}  // namespace ontolookup::load
