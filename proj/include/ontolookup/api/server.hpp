#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "ontolookup/api/dataset.hpp"

namespace ontolookup::api {

struct ServerOptions {
  std::filesystem::path dataset_dir;
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::size_t default_page_size = 20;
  std::optional<std::filesystem::path> ui_dir;  // served under /ui
  std::size_t threads = 8;
};

class ApiServer {
 public:
  explicit ApiServer(ServerOptions options);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Current snapshot; null before the first successful load.
  std::shared_ptr<const Dataset> dataset() const;
  void set_dataset(std::shared_ptr<const Dataset> dataset);
  // Reads `dataset_dir` again and swaps it in. The old snapshot stays on
  // failure and the reason lands in `error`.
  bool reload(std::string* error = nullptr);

  // Binds the listening socket and returns its port. Throws on failure.
  int bind();
  // Serves until stop(). Requires bind().
  void run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// The OpenAPI description served at /api/docs.
std::string openapi_document();

}  // namespace ontolookup::api
