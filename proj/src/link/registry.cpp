#include "ontolookup/link/registry.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace ontolookup::link {

using nlohmann::json;

namespace {

constexpr std::string_view kPlaceholder = "$1";

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::size_t count_placeholders(std::string_view s) {
  std::size_t n = 0;
  for (auto pos = s.find(kPlaceholder); pos != std::string_view::npos;
       pos = s.find(kPlaceholder, pos + kPlaceholder.size())) {
    ++n;
  }
  return n;
}

std::string substitute(std::string_view pattern, std::string_view local) {
  auto pos = pattern.find(kPlaceholder);
  std::string out(pattern.substr(0, pos));
  out += local;
  out += pattern.substr(pos + kPlaceholder.size());
  return out;
}

bool valid_prefix(std::string_view p) {
  if (p.empty() || !std::isalpha(static_cast<unsigned char>(p[0]))) return false;
  return std::all_of(p.begin(), p.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.' || c == '-';
  });
}

RegistryEntry entry_from_json(const json& j) {
  if (!j.is_object()) throw RegistryError("registry entry is not an object");
  RegistryEntry e;
  if (!j.contains("prefix") || !j["prefix"].is_string()) {
    throw RegistryError("registry entry without a string prefix");
  }
  e.prefix = j["prefix"].get<std::string>();
  if (!j.contains("uri_pattern") || !j["uri_pattern"].is_string()) {
    throw RegistryError("registry entry '" + e.prefix + "' has no uri_pattern");
  }
  e.uri_pattern = j["uri_pattern"].get<std::string>();
  if (j.contains("resolver_template") && !j["resolver_template"].is_null()) {
    e.resolver_template = j["resolver_template"].get<std::string>();
  }
  if (j.contains("synonyms")) e.synonyms = j["synonyms"].get<std::vector<std::string>>();
  return e;
}

json entry_to_json(const RegistryEntry& e) {
  json j = {{"prefix", e.prefix}, {"uri_pattern", e.uri_pattern}};
  if (e.resolver_template) j["resolver_template"] = *e.resolver_template;
  if (!e.synonyms.empty()) j["synonyms"] = e.synonyms;
  return j;
}

}  // namespace

std::string_view RegistryEntry::stem() const {
  return std::string_view(uri_pattern).substr(0, uri_pattern.find(kPlaceholder));
}

std::string_view RegistryEntry::suffix() const {
  auto pos = uri_pattern.find(kPlaceholder);
  return std::string_view(uri_pattern).substr(pos + kPlaceholder.size());
}

std::string Curie::display() const { return upper(prefix) + ":" + local_id; }

Registry Registry::from_entries(std::vector<RegistryEntry> entries) {
  Registry r;
  std::set<std::size_t> lengths;
  for (auto& e : entries) {
    e.prefix = lower(e.prefix);
    if (!valid_prefix(e.prefix)) throw RegistryError("invalid prefix '" + e.prefix + "'");
    if (count_placeholders(e.uri_pattern) != 1) {
      throw RegistryError("uri_pattern of '" + e.prefix + "' must contain exactly one $1");
    }
    if (e.resolver_template && count_placeholders(*e.resolver_template) != 1) {
      throw RegistryError("resolver_template of '" + e.prefix + "' must contain exactly one $1");
    }
    if (e.stem().empty()) throw RegistryError("uri_pattern of '" + e.prefix + "' has an empty stem");
    std::size_t index = r.entries_.size();
    for (const auto& name : [&] {
           std::vector<std::string> names{e.prefix};
           for (const auto& s : e.synonyms) names.push_back(lower(s));
           return names;
         }()) {
      if (!r.by_prefix_.emplace(name, index).second) {
        throw RegistryError("duplicate prefix '" + name + "'");
      }
    }
    std::string stem(e.stem());
    if (!r.by_stem_.emplace(stem, index).second) {
      throw RegistryError("prefixes '" + r.entries_[r.by_stem_[stem]].prefix + "' and '" + e.prefix +
                          "' share the stem " + stem);
    }
    lengths.insert(stem.size());
    r.entries_.push_back(std::move(e));
  }
  r.stem_lengths_.assign(lengths.rbegin(), lengths.rend());
  return r;
}

Registry Registry::parse(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw RegistryError(std::string("malformed registry: ") + e.what());
  }
  if (doc.is_object() && doc.contains("entries")) doc = doc["entries"];
  if (!doc.is_array()) throw RegistryError("registry must be a JSON array of entries");
  std::vector<RegistryEntry> entries;
  try {
    for (const auto& j : doc) entries.push_back(entry_from_json(j));
  } catch (const json::exception& e) {
    throw RegistryError(std::string("malformed registry entry: ") + e.what());
  }
  return from_entries(std::move(entries));
}

Registry Registry::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RegistryError("cannot read registry " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::optional<Curie> Registry::compress(std::string_view iri) const {
  for (auto length : stem_lengths_) {
    if (iri.size() <= length) continue;
    auto it = by_stem_.find(std::string(iri.substr(0, length)));
    if (it == by_stem_.end()) continue;
    const auto& e = entries_[it->second];
    std::string_view rest = iri.substr(length);
    std::string_view suffix = e.suffix();
    if (rest.size() <= suffix.size() || !rest.ends_with(suffix)) continue;
    return Curie{e.prefix, std::string(rest.substr(0, rest.size() - suffix.size()))};
  }
  return std::nullopt;
}

const RegistryEntry* Registry::find(std::string_view prefix) const {
  auto it = by_prefix_.find(lower(prefix));
  return it == by_prefix_.end() ? nullptr : &entries_[it->second];
}

std::optional<std::string> Registry::expand(const Curie& curie) const {
  const auto* e = find(curie.prefix);
  if (!e || curie.local_id.empty()) return std::nullopt;
  return substitute(e->uri_pattern, curie.local_id);
}

std::optional<Curie> Registry::parse_curie(std::string_view text) const {
  auto colon = text.find(':');
  if (colon == std::string_view::npos || colon + 1 >= text.size()) return std::nullopt;
  std::string_view prefix = text.substr(0, colon);
  std::string_view local = text.substr(colon + 1);
  if (local.starts_with("//")) return std::nullopt;
  if (std::any_of(local.begin(), local.end(), [](unsigned char c) { return std::isspace(c); })) {
    return std::nullopt;
  }
  const auto* e = find(prefix);
  if (!e) return std::nullopt;
  return Curie{e->prefix, std::string(local)};
}

std::optional<std::string> Registry::expand(std::string_view curie_text) const {
  auto c = parse_curie(curie_text);
  if (!c) return std::nullopt;
  return expand(*c);
}

std::optional<std::string> Registry::external_link(const Curie& curie) const {
  const auto* e = find(curie.prefix);
  if (!e || !e->resolver_template) return std::nullopt;
  return substitute(*e->resolver_template, curie.local_id);
}

std::string Registry::to_json() const {
  json out = json::array();
  for (const auto& e : entries_) out.push_back(entry_to_json(e));
  return out.dump(2) + "\n";
}

LinkedXref link_xref(std::string_view raw, const Registry& registry) {
  LinkedXref x{std::string(raw), registry.parse_curie(raw), std::nullopt};
  if (x.curie) x.url = registry.external_link(*x.curie);
  return x;
}

std::vector<LinkedXref> link_xrefs(std::span<const std::string> raw, const Registry& registry) {
  std::vector<LinkedXref> out;
  out.reserve(raw.size());
  for (const auto& r : raw) out.push_back(link_xref(r, registry));
  return out;
}

ConvertedRegistry convert_registry_export(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw RegistryError(std::string("malformed registry export: ") + e.what());
  }
  ConvertedRegistry out;
  std::vector<RegistryEntry> candidates;
  if (doc.is_array() || (doc.is_object() && doc.contains("entries"))) {
    const json& arr = doc.is_array() ? doc : doc["entries"];
    for (const auto& j : arr) candidates.push_back(entry_from_json(j));
  } else if (doc.is_object()) {
    // Bioregistry: {prefix: {uri_format, synonyms, obofoundry, deprecated, ...}}
    for (const auto& [key, j] : doc.items()) {
      if (!j.is_object() || j.value("deprecated", false)) continue;
      RegistryEntry e;
      e.prefix = lower(j.value("prefix", key));
      // OBO Foundry terms are minted as PURLs; uri_format is where a browser
      // should go, which for OBO prefixes is usually a different site.
      std::optional<std::string> uri_format;
      if (j.contains("uri_format") && j["uri_format"].is_string()) uri_format = j["uri_format"].get<std::string>();
      if (j.contains("obofoundry") && j["obofoundry"].is_object()) {
        std::string obo = j["obofoundry"].value("preferredPrefix", upper(e.prefix));
        e.uri_pattern = "http://purl.obolibrary.org/obo/" + obo + "_$1";
        e.resolver_template = uri_format.value_or(e.uri_pattern);
      } else if (uri_format) {
        e.uri_pattern = *uri_format;
        e.resolver_template = uri_format;
      } else {
        continue;
      }
      if (j.contains("synonyms") && j["synonyms"].is_array()) {
        for (const auto& s : j["synonyms"]) {
          if (s.is_string()) e.synonyms.push_back(s.get<std::string>());
        }
      }
      candidates.push_back(std::move(e));
    }
  } else {
    throw RegistryError("registry export is neither an array nor an object");
  }

  std::set<std::string> names;
  std::set<std::string> stems;
  for (auto& e : candidates) {
    e.prefix = lower(e.prefix);
    if (!valid_prefix(e.prefix) || count_placeholders(e.uri_pattern) != 1 || e.stem().empty() ||
        (e.resolver_template && count_placeholders(*e.resolver_template) != 1)) {
      out.warnings.push_back("skipped '" + e.prefix + "': unusable pattern");
      continue;
    }
    if (names.contains(e.prefix)) {
      out.warnings.push_back("skipped duplicate prefix '" + e.prefix + "'");
      continue;
    }
    std::string stem(e.stem());
    if (stems.contains(stem)) {
      out.warnings.push_back("skipped '" + e.prefix + "': stem " + stem + " already registered");
      continue;
    }
    std::vector<std::string> kept;
    for (const auto& s : e.synonyms) {
      std::string ls = lower(s);
      if (ls == e.prefix || names.contains(ls) || !valid_prefix(ls) ||
          std::find(kept.begin(), kept.end(), ls) != kept.end()) {
        continue;
      }
      kept.push_back(ls);
    }
    e.synonyms = kept;
    names.insert(e.prefix);
    names.insert(kept.begin(), kept.end());
    stems.insert(stem);
    out.entries.push_back(std::move(e));
  }
  // A later prefix may equal an earlier synonym; drop those synonyms.
  std::set<std::string> prefixes;
  for (const auto& e : out.entries) prefixes.insert(e.prefix);
  for (auto& e : out.entries) {
    std::erase_if(e.synonyms, [&](const std::string& s) { return prefixes.contains(s); });
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const RegistryEntry& a, const RegistryEntry& b) { return a.prefix < b.prefix; });
  return out;
}

}  // namespace ontolookup::link
