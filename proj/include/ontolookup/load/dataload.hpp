#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ontolookup/graph/graph_store.hpp"
#include "ontolookup/load/config.hpp"
#include "ontolookup/load/fetch.hpp"
#include "ontolookup/load/record.hpp"
#include "ontolookup/search/search_index.hpp"

namespace ontolookup::load {

struct OntologyReport {
  std::string id;
  std::string title;
  std::string source;
  std::string status;  // "ok" or "failed"
  std::optional<std::string> error;
  std::optional<std::string> ontology_iri;
  std::vector<std::string> documents;  // import closure locations, discovery order
  std::size_t entities = 0;
  std::size_t classes = 0;
  std::size_t properties = 0;
  std::size_t individuals = 0;
  std::vector<std::string> languages;
  std::size_t parsed_triples = 0;
  std::size_t consumed_triples = 0;
  std::size_t dangling_triples = 0;
  std::vector<std::string> warnings;
  std::string content_hash;  // over the ontology's output files
  double duration_seconds = 0;
  nlohmann::json config;  // the entry with defaults filled in
};

struct DatasetManifest {
  int format = 1;
  std::string version;  // derived from content hashes only
  std::string created_at;
  std::vector<OntologyReport> ontologies;  // sorted by id

  const OntologyReport* find(std::string_view id) const;
  bool any_failed() const;
};

nlohmann::json manifest_to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(const nlohmann::json& j);
DatasetManifest read_manifest(const std::filesystem::path& dataset_dir);

// Dataset layout.
std::filesystem::path manifest_path(const std::filesystem::path& dir);
std::filesystem::path records_path(const std::filesystem::path& dir, std::string_view id);
std::filesystem::path header_path(const std::filesystem::path& dir, std::string_view id);
std::filesystem::path graph_path(const std::filesystem::path& dir, std::string_view id);
std::filesystem::path index_path(const std::filesystem::path& dir, std::string_view id);
std::filesystem::path registry_path(const std::filesystem::path& dir);

struct DataloadOptions {
  std::filesystem::path output_dir;
  unsigned workers = 1;
  FetchOptions fetch;
};

// Hierarchy node and search document of one record.
graph::NodeInput graph_node(const EntityRecord& record, const OntologyConfig& config);
search::SearchDocument search_document(const EntityRecord& record, const OntologyConfig& config);

// Loads every configured ontology into `output_dir`. A failing ontology is
// reported with status "failed" and leaves the others untouched. Throws when
// the registry or the output directory is unusable.
DatasetManifest run_dataload(const ConfigSet& configs, const DataloadOptions& options);

}  // namespace ontolookup::load
