#include "ontolookup/api/server.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <charconv>
#include <mutex>

#include "ontolookup/api/views.hpp"

namespace ontolookup::api {

using nlohmann::json;

namespace {

struct HttpError : std::runtime_error {
  HttpError(int status, const std::string& message) : std::runtime_error(message), status(status) {}
  int status;
};

HttpError bad_request(const std::string& m) { return {400, m}; }
HttpError not_found(const std::string& m) { return {404, m}; }

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_problem(httplib::Response& res, int status, const std::string& message, const std::string& path) {
  send_json(res,
            {{"status", status}, {"error", httplib::status_message(status)}, {"message", message}, {"path", path}},
            status);
  res.set_header("Content-Type", "application/problem+json");
}

std::optional<std::string> param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

std::size_t parse_count(const std::string& name, const std::string& text, std::size_t min, std::size_t max) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value < min || value > max) {
    throw bad_request(name + " must be an integer in " + std::to_string(min) + ".." + std::to_string(max));
  }
  return value;
}

bool parse_flag(const httplib::Request& req, const char* name, bool fallback) {
  auto v = param(req, name);
  if (!v) return fallback;
  if (*v == "true" || *v == "1") return true;
  if (*v == "false" || *v == "0") return false;
  throw bad_request(std::string(name) + " must be true or false");
}

constexpr std::size_t kMaxPage = 1'000'000;

PageRequest parse_page(const httplib::Request& req, std::size_t default_size) {
  PageRequest p;
  p.size = default_size;
  if (auto v = param(req, "page")) p.page = parse_count("page", *v, 0, kMaxPage);
  if (auto v = param(req, "size")) p.size = parse_count("size", *v, 1, search::kMaxPageSize);
  return p;
}

template <typename Items, typename Render>
json page_of(const PageRequest& p, const Items& items, Render render) {
  json out = json::array();
  std::size_t begin = std::min(items.size(), p.page * p.size);
  std::size_t end = std::min(items.size(), begin + p.size);
  for (std::size_t i = begin; i < end; ++i) out.push_back(render(items[i]));
  return page_json(p, items.size(), std::move(out));
}

std::string decode_iri(const std::string& segment) {
  auto iri = percent_decode(segment);
  if (!iri || iri->empty() || iri->find(':') == std::string::npos) {
    throw bad_request("entity IRI segment must be the double-URL-encoded absolute IRI");
  }
  return *iri;
}

graph::RelationFilter parse_relations(const httplib::Request& req, const OntologyData& ontology) {
  auto v = param(req, "relations");
  if (!v) return graph::RelationFilter::subclass_only();
  if (*v == "all") return graph::RelationFilter::all();
  std::vector<std::string> relations;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = v->find(',', pos);
    std::string r = v->substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto& known = ontology.config().hierarchical_properties;
    const auto& present = ontology.graph().relations();
    if (r != graph::kSubclassOf && std::find(known.begin(), known.end(), r) == known.end() &&
        std::find(present.begin(), present.end(), r) == present.end()) {
      throw bad_request("unknown relation '" + r + "'; use subclass_of, all, or hierarchical property IRIs");
    }
    relations.push_back(std::move(r));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return graph::RelationFilter::only(std::move(relations));
}

graph::NodeList traverse(const OntologyData& ontology, const std::string& direction, const std::string& iri,
                         const graph::RelationFilter& filter) {
  const auto& g = ontology.graph();
  // Ontology header records have no place in the hierarchy.
  if (!g.contains(iri)) return {};
  if (direction == "parents") return g.parents(iri, filter);
  if (direction == "children") return g.children(iri, filter);
  if (direction == "ancestors") return g.ancestors(iri, filter);
  return g.descendants(iri, filter);
}

bool kind_matches(const std::string& route_kind, const std::string& kind) {
  if (route_kind == "properties") return kind.ends_with("-property");
  if (route_kind == "individuals") return kind == "individual";
  // The class route serves every kind so that any linked entity resolves.
  return true;
}

}  // namespace

struct ApiServer::Impl {
  ServerOptions options;
  httplib::Server http;
  mutable std::mutex mutex;
  std::shared_ptr<const Dataset> dataset;
  int port = 0;

  explicit Impl(ServerOptions o) : options(std::move(o)) {}

  std::shared_ptr<const Dataset> snapshot() const {
    std::lock_guard lock(mutex);
    return dataset;
  }

  std::shared_ptr<const Dataset> require_dataset() const {
    auto d = snapshot();
    if (!d) throw HttpError(503, "no dataset loaded");
    return d;
  }

  const OntologyData& require_ontology(const Dataset& d, const std::string& id) const {
    if (const auto* o = d.ontology(id)) return *o;
    if (const auto* r = d.manifest().find(id)) {
      throw not_found("ontology '" + id + "' failed to load: " + r->error.value_or("unknown error"));
    }
    throw not_found("no ontology '" + id + "'");
  }

  load::EntityRecord require_record(const OntologyData& o, const std::string& iri) const {
    auto r = o.record(iri);
    if (!r) throw not_found("no entity <" + iri + "> in " + o.id());
    return std::move(*r);
  }

  std::string base_url(const httplib::Request& req) const {
    std::string host = req.get_header_value("Host");
    if (host.empty()) host = options.host + ":" + std::to_string(port);
    return "http://" + host;
  }

  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  Handler guarded(Handler h) {
    return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
      try {
        h(req, res);
      } catch (const HttpError& e) {
        send_problem(res, e.status, e.what(), req.path);
      } catch (const search::QueryError& e) {
        send_problem(res, 400, e.what(), req.path);
      } catch (const std::exception& e) {
        spdlog::error("{} {}: {}", req.method, req.path, e.what());
        send_problem(res, 500, e.what(), req.path);
      }
    };
  }

  void routes();
};

void ApiServer::Impl::routes() {
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  http.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type, Accept");
    res.set_header("Access-Control-Max-Age", "86400");
  });
  http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (res.body.empty()) send_problem(res, res.status, "no route for " + req.path, req.path);
  });

  http.Get("/health", guarded([this](const httplib::Request& req, httplib::Response& res) {
             auto d = snapshot();
             if (!d) {
               send_problem(res, 503, "no dataset loaded", req.path);
               return;
             }
             send_json(res, {{"status", "ok"},
                             {"version", d->manifest().version},
                             {"ontologies", d->manifest().ontologies.size()},
                             {"loaded", d->ontologies().size()}});
           }));

  http.Get("/api/docs", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(openapi_document(), "application/json");
  });

  http.Get("/api/v2/ontologies", guarded([this](const httplib::Request& req, httplib::Response& res) {
             auto d = require_dataset();
             auto p = parse_page(req, options.default_page_size);
             send_json(res, page_of(p, d->manifest().ontologies, ontology_summary));
           }));

  http.Get(R"(/api/v2/ontologies/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
             auto d = require_dataset();
             std::string id = req.matches[1];
             const auto* report = d->manifest().find(id);
             if (!report) throw not_found("no ontology '" + id + "'");
             send_json(res, ontology_detail(*report, d->ontology(id)));
           }));

  http.Get(R"(/api/v2/ontologies/([^/]+)/roots)", guarded([this](const httplib::Request& req, httplib::Response& res) {
             auto d = require_dataset();
             const auto& o = require_ontology(*d, req.matches[1]);
             auto filter = parse_relations(req, o);
             auto p = parse_page(req, options.default_page_size);
             std::string lang = param(req, "lang").value_or("");
             auto list = o.graph().roots(filter, parse_flag(req, "includeObsolete", false));
             auto page = page_of(p, list.nodes, [&](const graph::GraphNode& n) { return node_view(*d, o, n, lang); });
             page["truncated"] = list.truncated;
             send_json(res, page);
           }));

  const char* entity = R"(/api/v2/ontologies/([^/]+)/(classes|properties|individuals|entities)/([^/]+))";
  http.Get(entity, guarded([this](const httplib::Request& req, httplib::Response& res) {
             auto d = require_dataset();
             const auto& o = require_ontology(*d, req.matches[1]);
             std::string iri = decode_iri(req.matches[3]);
             auto record = require_record(o, iri);
             if (!kind_matches(req.matches[2], record.kind)) {
               throw not_found("<" + iri + "> is a " + record.kind + ", not one of " + std::string(req.matches[2]));
             }
             send_json(res, v2_entity_view(*d, o, record, param(req, "lang").value_or("")));
           }));

  http.Get(std::string(entity) + "/(parents|children|ancestors|descendants)",
           guarded([this](const httplib::Request& req, httplib::Response& res) {
             auto d = require_dataset();
             const auto& o = require_ontology(*d, req.matches[1]);
             std::string iri = decode_iri(req.matches[3]);
             if (!o.contains(iri)) throw not_found("no entity <" + iri + "> in " + o.id());
             auto filter = parse_relations(req, o);
             auto p = parse_page(req, options.default_page_size);
             std::string lang = param(req, "lang").value_or("");
             auto list = traverse(o, req.matches[4], iri, filter);
             auto page = page_of(p, list.nodes, [&](const graph::GraphNode& n) { return node_view(*d, o, n, lang); });
             page["truncated"] = list.truncated;
             send_json(res, page);
           }));

  http.Get("/api/v2/search", guarded([this](const httplib::Request& req, httplib::Response& res) {
             auto d = require_dataset();
             auto q = param(req, "q");
             if (!q) throw bad_request("q is required");
             search::SearchFilters filters;
             filters.ontology = param(req, "ontology");
             filters.lang = param(req, "lang").value_or("");
             filters.exact = parse_flag(req, "exact", false);
             filters.include_obsolete = parse_flag(req, "includeObsolete", false);
             auto p = parse_page(req, options.default_page_size);
             auto result = d->index().search(*q, filters, p.page, p.size);
             json items = json::array();
             for (const auto& hit : result.hits) {
               const auto& doc = d->index().document(hit.doc);
               items.push_back({{"iri", doc.iri},
                                {"label", hit.label},
                                {"ontology_id", doc.ontology_id},
                                {"curie", doc.curie.empty() ? json(nullptr) : json(doc.curie)},
                                {"kind", doc.kind},
                                {"tier", static_cast<int>(hit.tier)},
                                {"is_obsolete", doc.is_obsolete},
                                {"is_defining_ontology", doc.is_defining_ontology}});
             }
             send_json(res, page_json(p, result.total, std::move(items)));
           }));

  http.Get("/api/v2/suggest", guarded([this](const httplib::Request& req, httplib::Response& res) {
             auto d = require_dataset();
             auto q = param(req, "q");
             if (!q) throw bad_request("q is required");
             std::size_t limit = 10;
             if (auto v = param(req, "limit")) limit = parse_count("limit", *v, 1, search::kMaxPageSize);
             auto suggestions = d->index().suggest(*q, param(req, "ontology"), param(req, "lang").value_or(""), limit);
             json out = json::array();
             for (const auto& s : suggestions) {
               out.push_back({{"label", s.label}, {"iri", s.iri}, {"ontology_id", s.ontology_id}});
             }
             send_json(res, out);
           }));

  auto v1_item = [this](const Dataset& d, const OntologyData& o, const std::string& iri, const std::string& base) {
    if (auto r = o.record(iri)) return v1_entity_view(d, o, *r, base);
    return json{{"iri", iri}, {"label", nullptr}, {"ontology_name", o.id()}, {"is_defining_ontology", false}};
  };

  http.Get(R"(/api/ontologies/([^/]+)/terms)", guarded([this, v1_item](const httplib::Request& req, httplib::Response& res) {
             auto d = require_dataset();
             const auto& o = require_ontology(*d, req.matches[1]);
             std::string base = base_url(req);
             if (auto iri = param(req, "iri")) {
               send_json(res, v1_entity_view(*d, o, require_record(o, *iri), base));
               return;
             }
             auto p = parse_page(req, options.default_page_size);
             json items = json::array();
             std::size_t begin = std::min(o.record_count(), p.page * p.size);
             std::size_t end = std::min(o.record_count(), begin + p.size);
             for (std::size_t i = begin; i < end; ++i) items.push_back(v1_item(*d, o, o.iri_at(i), base));
             send_json(res, page_json(p, o.record_count(), std::move(items)));
           }));

  http.Get(R"(/api/ontologies/([^/]+)/terms/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
             auto d = require_dataset();
             const auto& o = require_ontology(*d, req.matches[1]);
             std::string iri = decode_iri(req.matches[2]);
             send_json(res, v1_entity_view(*d, o, require_record(o, iri), base_url(req)));
           }));

  http.Get(R"(/api/ontologies/([^/]+)/terms/([^/]+)/(parents|children|ancestors|descendants))",
           guarded([this, v1_item](const httplib::Request& req, httplib::Response& res) {
             auto d = require_dataset();
             const auto& o = require_ontology(*d, req.matches[1]);
             std::string iri = decode_iri(req.matches[2]);
             if (!o.contains(iri)) throw not_found("no entity <" + iri + "> in " + o.id());
             auto p = parse_page(req, options.default_page_size);
             auto list = traverse(o, req.matches[3], iri, graph::RelationFilter::subclass_only());
             std::string base = base_url(req);
             send_json(res, page_of(p, list.nodes, [&](const graph::GraphNode& n) { return v1_item(*d, o, n.iri, base); }));
           }));

  if (options.ui_dir) {
    if (!http.set_mount_point("/ui", options.ui_dir->string())) {
      throw std::runtime_error("UI directory " + options.ui_dir->string() + " does not exist");
    }
  }
}

ApiServer::ApiServer(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {
  std::size_t threads = std::max<std::size_t>(1, impl_->options.threads);
  impl_->http.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  impl_->routes();
}

ApiServer::~ApiServer() { stop(); }

std::shared_ptr<const Dataset> ApiServer::dataset() const { return impl_->snapshot(); }

void ApiServer::set_dataset(std::shared_ptr<const Dataset> dataset) {
  std::lock_guard lock(impl_->mutex);
  impl_->dataset = std::move(dataset);
}

bool ApiServer::reload(std::string* error) {
  try {
    set_dataset(Dataset::load(impl_->options.dataset_dir));
    return true;
  } catch (const std::exception& e) {
    spdlog::error("reload failed, keeping the current dataset: {}", e.what());
    if (error) *error = e.what();
    return false;
  }
}

int ApiServer::bind() {
  const auto& o = impl_->options;
  if (o.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(o.host);
    if (impl_->port < 0) throw std::runtime_error("cannot bind " + o.host);
  } else {
    if (!impl_->http.bind_to_port(o.host, o.port)) {
      throw std::runtime_error("cannot bind " + o.host + ":" + std::to_string(o.port));
    }
    impl_->port = o.port;
  }
  return impl_->port;
}

void ApiServer::run() { impl_->http.listen_after_bind(); }

void ApiServer::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

void ApiServer::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace ontolookup::api
