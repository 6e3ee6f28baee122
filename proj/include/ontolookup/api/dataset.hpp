#pragma once

#include <filesystem>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ontolookup/graph/graph_store.hpp"
#include "ontolookup/link/registry.hpp"
#include "ontolookup/load/config.hpp"
#include "ontolookup/load/dataload.hpp"
#include "ontolookup/load/record.hpp"
#include "ontolookup/search/search_index.hpp"

namespace ontolookup::api {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One successfully loaded ontology. Records stay serialized and are parsed
// on request.
class OntologyData {
 public:
  const load::OntologyReport& report() const { return report_; }
  const load::OntologyConfig& config() const { return config_; }
  const std::string& id() const { return report_.id; }
  const nlohmann::json& header() const { return header_; }
  const graph::GraphSegment& graph() const { return graph_; }

  bool contains(std::string_view iri) const { return find(iri) != nullptr; }
  std::optional<load::EntityRecord> record(std::string_view iri) const;
  std::size_t record_count() const { return refs_.size(); }
  // i-th record in IRI order.
  load::EntityRecord record_at(std::size_t i) const;
  const std::string& iri_at(std::size_t i) const { return refs_.at(i).iri; }

 private:
  friend class Dataset;
  struct RecordRef {
    std::string iri;
    std::size_t offset = 0;
    std::size_t length = 0;
  };
  const RecordRef* find(std::string_view iri) const;

  load::OntologyReport report_;
  load::OntologyConfig config_;
  nlohmann::json header_;
  graph::GraphSegment graph_;
  std::string records_;
  std::vector<RecordRef> refs_;  // sorted by IRI
};

class Dataset {
 public:
  // Throws DatasetError when the directory holds no readable dataset.
  static std::shared_ptr<const Dataset> load(const std::filesystem::path& dir);

  const std::filesystem::path& directory() const { return dir_; }
  const load::DatasetManifest& manifest() const { return manifest_; }
  const link::Registry& registry() const { return registry_; }
  const search::SearchIndex& index() const { return index_; }

  // Loaded ontologies only, sorted by id.
  const std::vector<std::unique_ptr<OntologyData>>& ontologies() const { return ontologies_; }
  const OntologyData* ontology(std::string_view id) const;
  // Loaded ontologies holding a record for the IRI, sorted by id.
  std::vector<const OntologyData*> holders(std::string_view iri) const;

 private:
  static std::unique_ptr<OntologyData> load_ontology(const std::filesystem::path& dir,
                                                     const load::OntologyReport& report);

  std::filesystem::path dir_;
  load::DatasetManifest manifest_;
  link::Registry registry_;
  search::SearchIndex index_;
  std::vector<std::unique_ptr<OntologyData>> ontologies_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> holders_;
};

}  // namespace ontolookup::api
