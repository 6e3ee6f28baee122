#pragma once

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontolookup/rdf/term.hpp"

namespace ontolookup::load {

class FetchError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FetchOptions {
  std::filesystem::path cache_dir;  // empty disables the cache
  bool offline = false;             // cache only; no network
  bool prefer_cache = true;         // a cached copy short-circuits the download
  long timeout_seconds = 120;
};

struct FetchedDocument {
  std::string location;  // absolute path or URL actually read
  std::string base_iri;  // file:// IRI for paths, the URL otherwise
  std::string bytes;
};

// $ONTOLOOKUP_CACHE_DIR, else $XDG_CACHE_HOME/ontolookup, else ~/.cache/ontolookup.
std::filesystem::path default_cache_dir();

bool is_url(std::string_view location);

// Cache file name for a URL: 16 hex digits of its 64-bit FNV-1a hash.
std::string cache_key(std::string_view url);
// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

// Reads local paths (relative ones against `base_dir`), file: URLs, and
// http(s) URLs through libcurl with an on-disk cache.
class Fetcher {
 public:
  explicit Fetcher(FetchOptions options = {});

  FetchedDocument fetch(std::string_view location, const std::filesystem::path& base_dir = {}) const;
  const FetchOptions& options() const { return options_; }

 private:
  FetchedDocument fetch_url(const std::string& url) const;
  FetchOptions options_;
};

// Writes `bytes` to a sibling temp file and renames it over `path`.
void write_file_atomically(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace ontolookup::load
