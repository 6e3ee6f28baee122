// ontolookup: validate configs, load datasets, serve them, sync the prefix
// registry and print dataset statistics.
//
// Exit codes: 0 success, 1 fatal error, 2 finished with warnings.

#include <CLI11.hpp>
#include <signal.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <cstdio>
#include <iostream>
#include <nlohmann/json.hpp>
#include <set>
#include <thread>

#include "ontolookup/api/server.hpp"
#include "ontolookup/link/registry.hpp"
#include "ontolookup/load/config.hpp"
#include "ontolookup/load/dataload.hpp"
#include "ontolookup/load/fetch.hpp"

using namespace ontolookup;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFatal = 1;
constexpr int kWarnings = 2;

const char* kDefaultRegistrySource =
    "https://raw.githubusercontent.com/biopragmatics/bioregistry/main/exports/registry/registry.json";

int cmd_validate(const fs::path& config_path, bool as_json) {
  json report = {{"config", config_path.string()}, {"valid", false}, {"ontologies", json::array()}};
  int code = kOk;
  try {
    auto configs = load::load_config(config_path);
    report["valid"] = true;
    for (const auto& c : configs.ontologies) {
      json entry = {{"id", c.id}, {"title", c.title}, {"source", c.source}, {"verdict", "ok"}};
      if (!load::is_url(c.source) && !c.source.starts_with("file:") && !fs::exists(configs.base_dir / c.source)) {
        entry["verdict"] = "warning";
        entry["message"] = "source file not found: " + (configs.base_dir / c.source).string();
        code = kWarnings;
      }
      report["ontologies"].push_back(entry);
    }
    if (configs.registry) {
      report["registry"] = *configs.registry;
      if (!load::is_url(*configs.registry) && !fs::exists(configs.base_dir / *configs.registry)) {
        report["registry_warning"] = "registry file not found";
        code = kWarnings;
      }
    }
  } catch (const load::ConfigError& e) {
    report["error"] = e.what();
    if (!e.ontology_id().empty()) report["error_ontology"] = e.ontology_id();
    code = kFatal;
  } catch (const std::exception& e) {
    report["error"] = e.what();
    code = kFatal;
  }

  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else if (code == kFatal) {
    std::cout << "invalid " << config_path.string() << ": " << report["error"].get<std::string>() << "\n";
  } else {
    for (const auto& o : report["ontologies"]) {
      std::cout << o["verdict"].get<std::string>() << "  " << o["id"].get<std::string>() << "  "
                << o["title"].get<std::string>();
      if (o.contains("message")) std::cout << "  (" << o["message"].get<std::string>() << ")";
      std::cout << "\n";
    }
    if (report.contains("registry_warning")) std::cout << "warning  registry file not found\n";
  }
  return code;
}

void print_manifest(const load::DatasetManifest& m) {
  std::printf("%-16s %-7s %9s %9s %10s %11s %9s %9s  %s\n", "ontology", "status", "entities", "classes",
              "properties", "individuals", "dangling", "seconds", "languages");
  for (const auto& o : m.ontologies) {
    std::string langs;
    for (const auto& l : o.languages) langs += (langs.empty() ? "" : ",") + l;
    std::printf("%-16s %-7s %9zu %9zu %10zu %11zu %9zu %9.3f  %s\n", o.id.c_str(), o.status.c_str(), o.entities,
                o.classes, o.properties, o.individuals, o.dangling_triples, o.duration_seconds, langs.c_str());
    if (o.error) std::printf("    error: %s\n", o.error->c_str());
  }
  std::printf("dataset version %s\n", m.version.c_str());
}

int cmd_dataload(const fs::path& config_path, const fs::path& out, unsigned workers, bool offline,
                 const std::string& cache_dir) {
  try {
    auto configs = load::load_config(config_path);
    load::DataloadOptions options;
    options.output_dir = out;
    options.workers = workers;
    options.fetch.offline = offline;
    options.fetch.cache_dir = cache_dir.empty() ? load::default_cache_dir() : fs::path(cache_dir);
    auto manifest = load::run_dataload(configs, options);
    print_manifest(manifest);
    return manifest.any_failed() ? kWarnings : kOk;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kFatal;
  }
}

int cmd_serve(const api::ServerOptions& options) {
  // Signals go to a dedicated waiter thread, never to server threads.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGTERM);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGHUP);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  std::shared_ptr<const api::Dataset> dataset;
  try {
    dataset = api::Dataset::load(options.dataset_dir);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kFatal;
  }
  std::unique_ptr<api::ApiServer> server;
  int port = 0;
  try {
    server = std::make_unique<api::ApiServer>(options);
    server->set_dataset(std::move(dataset));
    port = server->bind();
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kFatal;
  }
  spdlog::info("serving {} on http://{}:{}", options.dataset_dir.string(), options.host, port);

  std::atomic<bool> stopping{false};
  std::thread waiter([&] {
    while (true) {
      int sig = 0;
      if (sigwait(&signals, &sig) != 0) continue;
      if (sig == SIGHUP) {
        spdlog::info("reloading {}", options.dataset_dir.string());
        server->reload();
        continue;
      }
      spdlog::info("shutting down");
      stopping = true;
      server->stop();
      return;
    }
  });
  server->run();
  // run() can also return on its own, e.g. when the socket fails; wake the waiter.
  if (!stopping) pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kOk;
}

int cmd_registry_sync(const fs::path& out, const std::string& source, const std::string& cache_dir) {
  try {
    load::FetchOptions fetch;
    fetch.prefer_cache = false;
    if (!cache_dir.empty()) fetch.cache_dir = cache_dir;
    auto doc = load::Fetcher(fetch).fetch(source, fs::current_path());
    auto converted = link::convert_registry_export(doc.bytes);
    for (const auto& w : converted.warnings) spdlog::warn("{}", w);
    auto registry = link::Registry::from_entries(std::move(converted.entries));
    if (!out.parent_path().empty()) fs::create_directories(out.parent_path());
    load::write_file_atomically(out, registry.to_json());
    std::cout << "wrote " << registry.entries().size() << " prefixes to " << out.string() << "\n";
    return kOk;
  } catch (const std::exception& e) {
    spdlog::error("registry sync from {} failed: {}", source, e.what());
    return kFatal;
  }
}

int cmd_stats(const fs::path& data, const std::string& ontology, bool as_json) {
  load::DatasetManifest manifest;
  try {
    manifest = load::read_manifest(data);
  } catch (const std::exception& e) {
    spdlog::error("cannot read dataset in {}: {}", data.string(), e.what());
    return kFatal;
  }
  std::vector<load::OntologyReport> selected;
  if (!ontology.empty()) {
    const auto* o = manifest.find(ontology);
    if (!o) {
      spdlog::error("no ontology '{}' in {}", ontology, data.string());
      return kFatal;
    }
    selected.push_back(*o);
  } else {
    selected = manifest.ontologies;
  }
  std::size_t entities = 0, classes = 0, properties = 0, individuals = 0, dangling = 0;
  std::set<std::string> languages;
  json rows = json::array();
  for (const auto& o : selected) {
    entities += o.entities;
    classes += o.classes;
    properties += o.properties;
    individuals += o.individuals;
    dangling += o.dangling_triples;
    languages.insert(o.languages.begin(), o.languages.end());
    rows.push_back({{"id", o.id},
                    {"status", o.status},
                    {"entities", o.entities},
                    {"classes", o.classes},
                    {"properties", o.properties},
                    {"individuals", o.individuals},
                    {"languages", o.languages},
                    {"dangling", o.dangling_triples}});
  }
  json totals = {{"ontologies", selected.size()}, {"entities", entities}, {"classes", classes},
                 {"properties", properties},      {"individuals", individuals}, {"languages", languages},
                 {"dangling", dangling}};
  if (as_json) {
    std::cout << json{{"version", manifest.version}, {"ontologies", rows}, {"totals", totals}}.dump(2) << "\n";
    return kOk;
  }
  load::DatasetManifest shown = manifest;
  shown.ontologies = selected;
  print_manifest(shown);
  std::printf("total: %zu ontologies, %zu entities, %zu classes, %zu properties, %zu individuals, %zu dangling\n",
              selected.size(), entities, classes, properties, individuals, dangling);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("ontolookup"));

  CLI::App app{"Ontology loading, search and lookup service"};
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")->capture_default_str();

  fs::path config, out, data;
  bool as_json = false, offline = false;
  unsigned workers = 1;
  std::string cache_dir, ontology, source = kDefaultRegistrySource;
  api::ServerOptions serve;

  auto* validate = app.add_subcommand("validate", "Check an ontology config file");
  validate->add_option("--config", config, "Config file")->required();
  validate->add_flag("--json", as_json, "Machine-readable report");

  auto* dataload = app.add_subcommand("dataload", "Load every configured ontology into a dataset directory");
  dataload->add_option("--config", config, "Config file")->required();
  dataload->add_option("--out", out, "Dataset directory")->required();
  dataload->add_option("--workers", workers, "Ontologies loaded in parallel")->check(CLI::Range(1u, 256u));
  dataload->add_flag("--offline", offline, "Use cached downloads only");
  dataload->add_option("--cache-dir", cache_dir, "Download cache (default $ONTOLOOKUP_CACHE_DIR)");

  auto* serve_cmd = app.add_subcommand("serve", "Serve a dataset over HTTP until SIGTERM; SIGHUP reloads");
  serve_cmd->add_option("--data", serve.dataset_dir, "Dataset directory")->required();
  serve_cmd->add_option("--port", serve.port, "TCP port")->capture_default_str();
  serve_cmd->add_option("--host", serve.host, "Listen address")->capture_default_str();
  serve_cmd->add_option("--page-size", serve.default_page_size, "Default page size")
      ->check(CLI::Range(1, 500))
      ->capture_default_str();
  serve_cmd->add_option("--threads", serve.threads, "Request threads")->capture_default_str();
  std::string ui_dir;
  serve_cmd->add_option("--ui", ui_dir, "Static UI bundle served under /ui")->check(CLI::ExistingDirectory);

  auto* sync = app.add_subcommand("registry-sync", "Download and convert the prefix registry");
  sync->add_option("--out", out, "registry.json to write")->required();
  sync->add_option("--source", source, "Registry export URL, file: URL or path")->capture_default_str();
  sync->add_option("--cache-dir", cache_dir, "Download cache");

  auto* stats = app.add_subcommand("stats", "Print dataset counts");
  stats->add_option("--data", data, "Dataset directory")->required();
  stats->add_option("--ontology", ontology, "Only this ontology");
  stats->add_flag("--json", as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kFatal;
  }
  spdlog::set_level(spdlog::level::from_str(log_level));

  if (*validate) return cmd_validate(config, as_json);
  if (*dataload) return cmd_dataload(config, out, workers, offline, cache_dir);
  if (*serve_cmd) {
    if (!ui_dir.empty()) serve.ui_dir = ui_dir;
    return cmd_serve(serve);
  }
  if (*sync) return cmd_registry_sync(out, source, cache_dir);
  if (*stats) return cmd_stats(data, ontology, as_json);
  return kFatal;
}
