#include "ontolookup/api/dataset.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>

#include "ontolookup/load/fetch.hpp"

namespace ontolookup::api {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Pulls the top-level "iri" out of a record line and stops there.
class IriScanner : public nlohmann::json_sax<json> {
 public:
  std::string iri;

  bool null() override { return scalar(); }
  bool boolean(bool) override { return scalar(); }
  bool number_integer(number_integer_t) override { return scalar(); }
  bool number_unsigned(number_unsigned_t) override { return scalar(); }
  bool number_float(number_float_t, const string_t&) override { return scalar(); }
  bool string(string_t& value) override {
    if (take_) {
      iri = value;
      return false;
    }
    return scalar();
  }
  bool binary(binary_t&) override { return scalar(); }
  bool start_object(std::size_t) override { return open(); }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(); }
  bool end_array() override { return close(); }
  bool key(string_t& value) override {
    take_ = depth_ == 1 && value == "iri";
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }

 private:
  bool scalar() {
    take_ = false;
    return true;
  }
  bool open() {
    take_ = false;
    ++depth_;
    return true;
  }
  bool close() {
    --depth_;
    return true;
  }
  int depth_ = 0;
  bool take_ = false;
};

std::string top_level_iri(std::string_view line) {
  IriScanner scanner;
  json::sax_parse(line.begin(), line.end(), &scanner);
  return scanner.iri;
}

load::OntologyConfig config_from(const json& echo) {
  json wrapper = {{"ontologies", json::array({echo})}};
  return load::parse_config(wrapper.dump()).ontologies.at(0);
}

}  // namespace

const OntologyData::RecordRef* OntologyData::find(std::string_view iri) const {
  auto it = std::lower_bound(refs_.begin(), refs_.end(), iri,
                             [](const RecordRef& r, std::string_view v) { return r.iri < v; });
  return it != refs_.end() && it->iri == iri ? &*it : nullptr;
}

std::optional<load::EntityRecord> OntologyData::record(std::string_view iri) const {
  const auto* ref = find(iri);
  if (!ref) return std::nullopt;
  return load::record_from_json(json::parse(std::string_view(records_).substr(ref->offset, ref->length)));
}

load::EntityRecord OntologyData::record_at(std::size_t i) const {
  const auto& ref = refs_.at(i);
  return load::record_from_json(json::parse(std::string_view(records_).substr(ref.offset, ref.length)));
}

std::unique_ptr<OntologyData> Dataset::load_ontology(const fs::path& dir, const load::OntologyReport& report) {
  auto data = std::make_unique<OntologyData>();
  data->report_ = report;
  data->config_ = config_from(report.config);
  data->header_ = json::parse(load::read_file(load::header_path(dir, report.id)));
  data->graph_ = graph::GraphSegment::deserialize(load::read_file(load::graph_path(dir, report.id)));
  data->records_ = load::read_file(load::records_path(dir, report.id));
  std::string_view all = data->records_;
  for (std::size_t pos = 0; pos < all.size();) {
    std::size_t end = all.find('\n', pos);
    if (end == std::string_view::npos) end = all.size();
    if (end > pos) {
      std::string iri = top_level_iri(all.substr(pos, end - pos));
      if (iri.empty()) throw DatasetError(report.id + ": record without an IRI at byte " + std::to_string(pos));
      data->refs_.push_back({std::move(iri), pos, end - pos});
    }
    pos = end + 1;
  }
  std::sort(data->refs_.begin(), data->refs_.end(),
            [](const auto& a, const auto& b) { return a.iri < b.iri; });
  return data;
}

std::shared_ptr<const Dataset> Dataset::load(const fs::path& dir) {
  if (!fs::is_regular_file(load::manifest_path(dir))) {
    throw DatasetError("no dataset manifest in " + dir.string());
  }
  auto data = std::make_shared<Dataset>();
  data->dir_ = dir;
  try {
    data->manifest_ = load::read_manifest(dir);
    if (fs::exists(load::registry_path(dir))) data->registry_ = link::Registry::load(load::registry_path(dir));
    for (const auto& report : data->manifest_.ontologies) {
      if (report.status != "ok") continue;
      data->ontologies_.push_back(load_ontology(dir, report));
      data->index_.append(search::SearchIndex::deserialize(load::read_file(load::index_path(dir, report.id))));
    }
  } catch (const DatasetError&) {
    throw;
  } catch (const std::exception& e) {
    throw DatasetError("cannot read dataset in " + dir.string() + ": " + e.what());
  }
  for (std::uint32_t i = 0; i < data->ontologies_.size(); ++i) {
    for (const auto& ref : data->ontologies_[i]->refs_) data->holders_[ref.iri].push_back(i);
  }
  spdlog::info("dataset {} loaded: {} ontologies, {} search documents", data->manifest_.version,
               data->ontologies_.size(), data->index_.size());
  return data;
}

const OntologyData* Dataset::ontology(std::string_view id) const {
  auto it = std::lower_bound(ontologies_.begin(), ontologies_.end(), id,
                             [](const auto& o, std::string_view v) { return o->id() < v; });
  return it != ontologies_.end() && (*it)->id() == id ? it->get() : nullptr;
}

std::vector<const OntologyData*> Dataset::holders(std::string_view iri) const {
  std::vector<const OntologyData*> out;
  auto it = holders_.find(std::string(iri));
  if (it == holders_.end()) return out;
  for (auto i : it->second) out.push_back(ontologies_[i].get());
  return out;
}

}  // namespace ontolookup::api
