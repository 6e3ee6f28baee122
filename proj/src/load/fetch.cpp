#include "ontolookup/load/fetch.hpp"

#include <curl/curl.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "ontolookup/rdf/iri.hpp"

namespace ontolookup::load {

namespace fs = std::filesystem;

std::filesystem::path default_cache_dir() {
  if (const char* dir = std::getenv("ONTOLOOKUP_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "ontolookup";
  if (const char* home = std::getenv("HOME"); home && *home) {
    return fs::path(home) / ".cache" / "ontolookup";
  }
  return fs::temp_directory_path() / "ontolookup-cache";
}

bool is_url(std::string_view location) {
  return location.starts_with("http://") || location.starts_with("https://") ||
         location.starts_with("file:");
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

std::string cache_key(std::string_view url) { return fnv1a_hex(url); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FetchError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomically(const std::filesystem::path& path, std::string_view bytes) {
  static std::atomic<unsigned> counter{0};
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()) % 100000) + "_" +
         std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FetchError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw FetchError("short write to " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw FetchError("cannot replace " + path.string());
  }
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string file_url_to_path(std::string_view url) {
  std::string_view rest = url.substr(5);  // after "file:"
  if (rest.starts_with("//")) {
    rest.remove_prefix(2);
    auto slash = rest.find('/');
    std::string_view host = rest.substr(0, slash);
    if (!host.empty() && host != "localhost") throw FetchError("remote file URL " + std::string(url));
    rest = slash == std::string_view::npos ? std::string_view("/") : rest.substr(slash);
  }
  std::string out;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest[i] == '%' && i + 2 < rest.size() + 0 && hex_value(rest[i + 1]) >= 0 &&
        hex_value(rest[i + 2]) >= 0) {
      out += static_cast<char>(hex_value(rest[i + 1]) * 16 + hex_value(rest[i + 2]));
      i += 2;
    } else {
      out += rest[i];
    }
  }
  return out;
}

void ensure_curl() {
  static std::once_flag once;
  std::call_once(once, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
}

std::size_t append_body(char* data, std::size_t size, std::size_t count, void* user) {
  static_cast<std::string*>(user)->append(data, size * count);
  return size * count;
}

}  // namespace

Fetcher::Fetcher(FetchOptions options) : options_(std::move(options)) {}

FetchedDocument Fetcher::fetch(std::string_view location, const std::filesystem::path& base_dir) const {
  if (location.starts_with("http://") || location.starts_with("https://")) {
    return fetch_url(std::string(location));
  }
  fs::path path = location.starts_with("file:") ? fs::path(file_url_to_path(location)) : fs::path(location);
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  path = fs::absolute(path).lexically_normal();
  FetchedDocument doc;
  doc.location = path.string();
  doc.base_iri = rdf::file_path_to_iri(doc.location);
  doc.bytes = read_file(path);
  return doc;
}

FetchedDocument Fetcher::fetch_url(const std::string& url) const {
  FetchedDocument doc;
  doc.location = url;
  doc.base_iri = url;
  fs::path cached;
  if (!options_.cache_dir.empty()) cached = options_.cache_dir / cache_key(url);
  if (!cached.empty() && (options_.offline || options_.prefer_cache) && fs::exists(cached)) {
    doc.bytes = read_file(cached);
    return doc;
  }
  if (options_.offline) throw FetchError(url + " is not cached and the fetcher is offline");

  ensure_curl();
  CURL* curl = curl_easy_init();
  if (!curl) throw FetchError("curl initialisation failed");
  char error[CURL_ERROR_SIZE] = {0};
  curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl, CURLOPT_MAXREDIRS, 10L);
  curl_easy_setopt(curl, CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl, CURLOPT_TIMEOUT, options_.timeout_seconds);
  curl_easy_setopt(curl, CURLOPT_NOSIGNAL, 1L);
  curl_easy_setopt(curl, CURLOPT_ERRORBUFFER, error);
  curl_easy_setopt(curl, CURLOPT_USERAGENT, "ontolookup/1.0");
  curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, append_body);
  curl_easy_setopt(curl, CURLOPT_WRITEDATA, &doc.bytes);
  CURLcode rc = curl_easy_perform(curl);
  curl_easy_cleanup(curl);
  if (rc != CURLE_OK) {
    throw FetchError("fetching " + url + " failed: " + (error[0] ? error : curl_easy_strerror(rc)));
  }
  if (!cached.empty()) {
    std::error_code ec;
    fs::create_directories(options_.cache_dir, ec);
    try {
      write_file_atomically(cached, doc.bytes);
    } catch (const FetchError&) {
      // An unwritable cache only costs a refetch next time.
    }
  }
  return doc;
}

}  // namespace ontolookup::load
