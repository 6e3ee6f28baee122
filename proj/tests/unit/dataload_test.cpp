#include <gtest/gtest.h>
#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "ontolookup/load/closure.hpp"
#include "ontolookup/load/dataload.hpp"
#include "ontolookup/load/lossless.hpp"
#include "ontolookup/rdf/isomorphism.hpp"
#include "ontolookup/rdf/parser.hpp"
#include "rdf_printers.hpp"

using namespace ontolookup;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = fs::path(ONTOLOOKUP_FIXTURE_DIR) / "corpus";

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("ontolookup-dataload-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

load::DatasetManifest load_into(const load::ConfigSet& configs, const fs::path& out, unsigned workers = 1) {
  load::DataloadOptions options;
  options.output_dir = out;
  options.workers = workers;
  options.fetch.offline = true;
  return load::run_dataload(configs, options);
}

load::ConfigSet corpus_config() { return load::load_config(kCorpus / "config.json"); }

load::ConfigSet without(load::ConfigSet configs, const std::string& id) {
  std::erase_if(configs.ontologies, [&](const load::OntologyConfig& c) { return c.id == id; });
  return configs;
}

std::vector<load::EntityRecord> read_records(const fs::path& dir, const std::string& id) {
  std::vector<load::EntityRecord> out;
  std::istringstream in(slurp(load::records_path(dir, id)));
  for (std::string line; std::getline(in, line);) out.push_back(load::record_from_json(json::parse(line)));
  return out;
}

// Every file under `dir` except the manifest, which carries timestamps.
std::map<std::string, std::string> output_files(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().filename() == "manifest.json") continue;
    files[fs::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return files;
}

std::vector<rdf::Triple> closure_triples(const load::OntologyConfig& config, const load::ConfigSet& configs) {
  load::Fetcher fetcher;
  auto closure = load::import_closure(config.source, [&](const std::string& ref) {
    auto it = config.import_locations.find(ref);
    return fetcher.fetch(it == config.import_locations.end() ? ref : it->second, configs.base_dir);
  });
  std::vector<rdf::Triple> all;
  for (auto& d : closure.documents) all.insert(all.end(), d.triples.begin(), d.triples.end());
  return all;
}

// Gives each decoded record its own blank namespace.
std::vector<rdf::Triple> scoped(std::vector<rdf::Triple> triples, const std::string& scope) {
  auto rename = [&](rdf::Term& t) {
    if (t.is_blank()) t = rdf::Term::blank(scope + t.value());
  };
  for (auto& t : triples) {
    rename(t.subject);
    rename(t.object);
  }
  return triples;
}

}  // namespace

TEST(Dataload, CorpusCounts) {
  TempDir dir;
  auto m = load_into(corpus_config(), dir.path());
  ASSERT_EQ(m.ontologies.size(), 3u);
  EXPECT_FALSE(m.any_failed());
  // Sorted by id regardless of config order.
  EXPECT_EQ(m.ontologies[0].id, "chebi");
  EXPECT_EQ(m.ontologies[1].id, "efo");
  EXPECT_EQ(m.ontologies[2].id, "uberon");

  const auto* efo = m.find("efo");
  ASSERT_NE(efo, nullptr);
  EXPECT_EQ(efo->classes, 11u);
  EXPECT_EQ(efo->properties, 1u);
  EXPECT_EQ(efo->individuals, 0u);
  EXPECT_EQ(efo->entities, 13u);  // plus the imported ontology header
  EXPECT_EQ(efo->parsed_triples, 44u);
  EXPECT_EQ(efo->documents.size(), 2u);
  EXPECT_EQ(efo->languages, (std::vector<std::string>{"en"}));
  EXPECT_EQ(efo->ontology_iri, "http://www.ebi.ac.uk/efo/efo.owl");

  const auto* chebi = m.find("chebi");
  EXPECT_EQ(chebi->classes, 6u);
  EXPECT_EQ(chebi->properties, 1u);
  EXPECT_EQ(chebi->parsed_triples, 26u);

  const auto* uberon = m.find("uberon");
  EXPECT_EQ(uberon->classes, 8u);
  EXPECT_EQ(uberon->properties, 4u);
  EXPECT_EQ(uberon->parsed_triples, 64u);
  EXPECT_EQ(uberon->languages, (std::vector<std::string>{"de", "en", "fr"}));

  for (const auto& o : m.ontologies) {
    EXPECT_EQ(o.status, "ok");
    EXPECT_EQ(o.parsed_triples, o.consumed_triples + o.dangling_triples) << o.id;
    EXPECT_TRUE(fs::exists(load::records_path(dir.path(), o.id)));
    EXPECT_TRUE(fs::exists(load::header_path(dir.path(), o.id)));
    EXPECT_TRUE(fs::exists(load::graph_path(dir.path(), o.id)));
    EXPECT_TRUE(fs::exists(load::index_path(dir.path(), o.id)));
  }

  auto reread = load::read_manifest(dir.path());
  EXPECT_EQ(load::manifest_to_json(reread), load::manifest_to_json(m));
}

TEST(Dataload, RecordsSortedAndSelfConsistent) {
  TempDir dir;
  auto configs = corpus_config();
  load_into(configs, dir.path());
  auto registry = link::Registry::load(load::registry_path(dir.path()));
  for (const auto& config : configs.ontologies) {
    auto records = read_records(dir.path(), config.id);
    ASSERT_FALSE(records.empty());
    for (std::size_t i = 1; i < records.size(); ++i) EXPECT_LT(records[i - 1].iri, records[i].iri);
    for (const auto& r : records) {
      EXPECT_EQ(r.ontology_id, config.id);
      // Queryable fields are a pure function of the stored lossless value.
      EXPECT_EQ(load::extract(r.lossless, config, registry), r.extracted) << r.iri;
      EXPECT_EQ(load::record_line(load::record_from_json(load::record_to_json(r))), load::record_line(r));
      EXPECT_EQ(r.imported, r.defining_ontology.has_value() && *r.defining_ontology != config.id);
    }
  }
  // An imported chebi class inside efo points back at chebi.
  auto efo = read_records(dir.path(), "efo");
  auto ethanol = std::find_if(efo.begin(), efo.end(), [](const load::EntityRecord& r) {
    return r.iri == "http://purl.obolibrary.org/obo/CHEBI_16236";
  });
  ASSERT_NE(ethanol, efo.end());
  EXPECT_TRUE(ethanol->imported);
  EXPECT_EQ(ethanol->defining_ontology, "chebi");
  EXPECT_EQ(ethanol->curie, "CHEBI:16236");
}

TEST(Dataload, StoredRecordsReproduceTheInputGraph) {
  TempDir dir;
  auto configs = corpus_config();
  load_into(configs, dir.path());
  for (const auto& config : configs.ontologies) {
    std::vector<rdf::Triple> rebuilt;
    auto records = read_records(dir.path(), config.id);
    for (std::size_t i = 0; i < records.size(); ++i) {
      auto t = scoped(load::from_lossless(records[i].lossless), "r" + std::to_string(i) + "_");
      rebuilt.insert(rebuilt.end(), t.begin(), t.end());
      ASSERT_TRUE(records[i].dangling.empty());
    }
    auto header = json::parse(slurp(load::header_path(dir.path(), config.id)));
    ASSERT_FALSE(header["lossless"].is_null());
    auto h = scoped(load::from_lossless(header["lossless"]), "h_");
    rebuilt.insert(rebuilt.end(), h.begin(), h.end());
    EXPECT_TRUE(header["unattached_dangling"].empty());

    auto input = closure_triples(config, configs);
    EXPECT_TRUE(rdf::isomorphic(rebuilt, input)) << config.id;
  }
}

TEST(Dataload, SegmentsLoadAndAnswer) {
  TempDir dir;
  load_into(corpus_config(), dir.path());
  auto index = search::SearchIndex::deserialize(slurp(load::index_path(dir.path(), "chebi")));
  auto hits = index.search("ethanol", {}, 0, 10);
  ASSERT_GE(hits.total, 1u);
  EXPECT_EQ(index.document(hits.hits[0].doc).iri, "http://purl.obolibrary.org/obo/CHEBI_16236");

  auto graph = graph::GraphSegment::deserialize(slurp(load::graph_path(dir.path(), "chebi")));
  EXPECT_EQ(graph.ontology_id(), "chebi");
  auto parents = graph.parents("http://purl.obolibrary.org/obo/CHEBI_16236", graph::RelationFilter::subclass_only());
  ASSERT_EQ(parents.nodes.size(), 1u);
  EXPECT_EQ(parents.nodes[0].iri, "http://purl.obolibrary.org/obo/CHEBI_30879");
}

TEST(Dataload, RepeatedRunsGiveIdenticalBytes) {
  TempDir a, b, c;
  auto configs = corpus_config();
  auto ma = load_into(configs, a.path());
  auto mb = load_into(configs, b.path());
  auto mc = load_into(configs, c.path(), 3);
  EXPECT_EQ(output_files(a.path()), output_files(b.path()));
  EXPECT_EQ(output_files(a.path()), output_files(c.path()));
  EXPECT_EQ(ma.version, mb.version);
  EXPECT_EQ(ma.version, mc.version);
}

TEST(Dataload, RemovingAnOntologyLeavesTheOthersUnchanged) {
  TempDir full, partial;
  auto configs = corpus_config();
  auto mf = load_into(configs, full.path());
  auto mp = load_into(without(configs, "uberon"), partial.path());
  ASSERT_EQ(mp.ontologies.size(), 2u);
  auto files = output_files(full.path());
  auto fewer = output_files(partial.path());
  for (const auto& [name, bytes] : fewer) {
    if (name.starts_with("uberon") || name == "index/uberon.idx") continue;
    EXPECT_EQ(files.at(name), bytes) << name;
  }
  EXPECT_FALSE(fs::exists(partial.path() / "uberon"));
  for (const char* id : {"chebi", "efo"}) EXPECT_EQ(mf.find(id)->content_hash, mp.find(id)->content_hash);
  EXPECT_NE(mf.version, mp.version);
}

TEST(Dataload, MissingSourceFailsOnlyThatOntology) {
  TempDir dir;
  auto configs = corpus_config();
  load_into(configs, dir.path());
  ASSERT_TRUE(fs::exists(dir.path() / "chebi"));
  for (auto& c : configs.ontologies) {
    if (c.id == "chebi") c.source = "no-such-file.ttl";
  }
  auto m = load_into(configs, dir.path());
  EXPECT_TRUE(m.any_failed());
  EXPECT_EQ(m.find("chebi")->status, "failed");
  ASSERT_TRUE(m.find("chebi")->error.has_value());
  EXPECT_NE(m.find("chebi")->error->find("no-such-file.ttl"), std::string::npos);
  EXPECT_EQ(m.find("efo")->status, "ok");
  EXPECT_EQ(m.find("uberon")->status, "ok");
  // Stale output of the failed ontology is gone.
  EXPECT_FALSE(fs::exists(dir.path() / "chebi"));
  EXPECT_FALSE(fs::exists(load::index_path(dir.path(), "chebi")));
}

TEST(Dataload, HttpNotFoundFailsOnlyThatOntology) {
  httplib::Server server;
  server.set_mount_point("/", kCorpus.string());
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread serve([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  TempDir dir, cache;
  auto configs = corpus_config();
  std::string base = "http://127.0.0.1:" + std::to_string(port) + "/";
  for (auto& c : configs.ontologies) {
    c.source = base + (c.id == "chebi" ? "missing.ttl" : c.source);
    for (auto& [iri, location] : c.import_locations) location = base + location;
  }
  load::DataloadOptions options;
  options.output_dir = dir.path();
  options.fetch.cache_dir = cache.path();
  auto m = load::run_dataload(configs, options);
  server.stop();
  serve.join();

  EXPECT_EQ(m.find("chebi")->status, "failed");
  EXPECT_NE(m.find("chebi")->error->find("404"), std::string::npos) << *m.find("chebi")->error;
  EXPECT_EQ(m.find("efo")->status, "ok");
  EXPECT_EQ(m.find("uberon")->status, "ok");
  EXPECT_EQ(m.find("efo")->classes, 11u);
}

TEST(Dataload, EmptyConfigGivesEmptyManifest) {
  TempDir dir;
  auto configs = load::parse_config(R"({"ontologies": []})");
  auto m = load_into(configs, dir.path());
  EXPECT_TRUE(m.ontologies.empty());
  EXPECT_FALSE(m.any_failed());
  EXPECT_EQ(slurp(load::registry_path(dir.path())), "[]\n");
  EXPECT_TRUE(load::read_manifest(dir.path()).ontologies.empty());
}

TEST(Dataload, ManifestRejectsUnknownFormat) {
  json j = {{"format", 2}, {"version", "x"}, {"created_at", "y"}, {"ontologies", json::array()}};
  EXPECT_THROW(load::manifest_from_json(j), std::runtime_error);
}
