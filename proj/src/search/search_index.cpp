#include "ontolookup/search/search_index.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "ontolookup/util/binary_io.hpp"

namespace ontolookup::search {

namespace {

constexpr std::string_view kMagic = "ONTOIDX";
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kMaxPage = 1'000'000;

bool token_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == ':' || c == '_' ||
         c >= 0x80;
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

void emit(std::string raw, std::vector<std::string>& out) {
  auto first = raw.find_first_not_of(':');
  if (first == std::string::npos) return;
  raw = raw.substr(first, raw.find_last_not_of(':') - first + 1);
  if (raw.find(':') == std::string::npos) {
    out.push_back(std::move(raw));
    return;
  }
  out.push_back(raw);
  std::size_t start = 0;
  while (start <= raw.size()) {
    auto colon = raw.find(':', start);
    if (colon == std::string::npos) colon = raw.size();
    if (colon > start) out.push_back(raw.substr(start, colon - start));
    start = colon + 1;
  }
}

bool contains_all(const std::set<std::string>& have, const std::vector<std::string>& tokens) {
  return std::all_of(tokens.begin(), tokens.end(), [&](const std::string& t) { return have.contains(t); });
}

void write_map(util::BinaryWriter& w, const LanguageMap& m) {
  w.u32(static_cast<std::uint32_t>(m.size()));
  for (const auto& [key, values] : m) {
    w.str(key);
    w.u32(static_cast<std::uint32_t>(values.size()));
    for (const auto& v : values) w.str(v);
  }
}

LanguageMap read_map(util::BinaryReader& r) {
  LanguageMap m;
  auto n = r.count(8);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto key = r.str();
    auto& values = m[key];
    auto k = r.count(4);
    for (std::uint32_t j = 0; j < k; ++j) values.push_back(r.str());
  }
  return m;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (token_byte(static_cast<unsigned char>(c))) {
      current.push_back(lower(c));
    } else if (!current.empty()) {
      emit(std::move(current), out);
      current.clear();
    }
  }
  if (!current.empty()) emit(std::move(current), out);
  return out;
}

std::string normalize(std::string_view text) {
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (!text.empty() && space(text.front())) text.remove_prefix(1);
  while (!text.empty() && space(text.back())) text.remove_suffix(1);
  std::string out(text);
  for (auto& c : out) c = lower(c);
  return out;
}

std::size_t utf8_length(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xc0) != 0x80; }));
}

const std::vector<std::string>* select_language(const LanguageMap& map, std::string_view lang,
                                                std::string_view default_language) {
  for (auto tag : {lang, default_language}) {
    auto it = map.find(std::string(tag));
    if (it != map.end() && !it->second.empty()) return &it->second;
  }
  for (const auto& [tag, values] : map) {
    if (!values.empty()) return &values;
  }
  return nullptr;
}

std::string display_label(const SearchDocument& doc, std::string_view lang) {
  if (const auto* labels = select_language(doc.labels, lang, doc.default_language)) return labels->front();
  return doc.short_form.empty() ? doc.iri : doc.short_form;
}

std::optional<Tier> match_tier(const SearchDocument& doc, std::string_view q, const std::vector<std::string>& tokens,
                               std::string_view lang) {
  static const std::vector<std::string> kNone;
  const auto* labels = select_language(doc.labels, lang, doc.default_language);
  const auto* synonyms = select_language(doc.synonyms, lang, doc.default_language);
  const auto* definitions = select_language(doc.definitions, lang, doc.default_language);
  if (!labels) labels = &kNone;
  if (!synonyms) synonyms = &kNone;
  if (!definitions) definitions = &kNone;

  auto any = [&](const std::vector<std::string>& values, auto&& predicate) {
    return std::any_of(values.begin(), values.end(), [&](const std::string& v) { return predicate(normalize(v)); });
  };
  if (any(*labels, [&](const std::string& v) { return v == q; })) return Tier::exact_label;
  if (any(*synonyms, [&](const std::string& v) { return v == q; })) return Tier::exact_synonym;
  if (any(*labels, [&](const std::string& v) { return v.starts_with(q); })) return Tier::label_prefix;
  if (!tokens.empty()) {
    std::set<std::string> names;
    for (const auto* values : {labels, synonyms}) {
      for (const auto& v : *values) {
        for (auto& t : tokenize(v)) names.insert(std::move(t));
      }
    }
    if (contains_all(names, tokens)) return Tier::label_tokens;
    std::set<std::string> defined;
    for (const auto& v : *definitions) {
      for (auto& t : tokenize(v)) defined.insert(std::move(t));
    }
    if (contains_all(defined, tokens)) return Tier::definition_tokens;
  }
  if ((!doc.curie.empty() && normalize(doc.curie) == q) || (!doc.short_form.empty() && normalize(doc.short_form) == q)) {
    return Tier::identifier;
  }
  return std::nullopt;
}

std::uint16_t SearchIndex::language_id(const std::string& tag) {
  auto it = std::find(languages_.begin(), languages_.end(), tag);
  if (it != languages_.end()) return static_cast<std::uint16_t>(it - languages_.begin());
  languages_.push_back(tag);
  return static_cast<std::uint16_t>(languages_.size() - 1);
}

void SearchIndex::index_document(std::uint32_t id) {
  const auto& doc = documents_[id];
  auto add_field = [&](const LanguageMap& map, Field field) {
    for (const auto& [tag, values] : map) {
      auto lang = language_id(tag);
      std::set<std::string> tokens;
      for (const auto& v : values) {
        for (auto& t : tokenize(v)) tokens.insert(std::move(t));
        if (field != Field::definition) {
          auto& exact = exact_[normalize(v)];
          Posting p{id, field, lang};
          if (exact.empty() || exact.back().doc != id || exact.back().field != field || exact.back().lang != lang) {
            exact.push_back(p);
          }
        }
        if (field == Field::label) labels_.push_back(LabelEntry{normalize(v), id, lang});
      }
      for (const auto& t : tokens) postings_[t].push_back(Posting{id, field, lang});
    }
  };
  add_field(doc.labels, Field::label);
  add_field(doc.synonyms, Field::synonym);
  add_field(doc.definitions, Field::definition);
  std::set<std::string> ids;
  if (!doc.curie.empty()) ids.insert(normalize(doc.curie));
  if (!doc.short_form.empty()) ids.insert(normalize(doc.short_form));
  for (const auto& key : ids) identifiers_[key].push_back(id);
}

void SearchIndex::finish() {
  std::sort(labels_.begin(), labels_.end(), [](const LabelEntry& a, const LabelEntry& b) {
    return std::tie(a.normalized, a.doc, a.lang) < std::tie(b.normalized, b.doc, b.lang);
  });
}

SearchIndex SearchIndex::build(std::vector<SearchDocument> documents) {
  SearchIndex index;
  index.documents_ = std::move(documents);
  for (std::uint32_t id = 0; id < index.documents_.size(); ++id) index.index_document(id);
  index.finish();
  return index;
}

void SearchIndex::append(const SearchIndex& other) {
  auto offset = static_cast<std::uint32_t>(documents_.size());
  std::vector<std::uint16_t> lang_map;
  for (const auto& tag : other.languages_) lang_map.push_back(language_id(tag));
  documents_.insert(documents_.end(), other.documents_.begin(), other.documents_.end());
  auto shift = [&](const Posting& p) { return Posting{p.doc + offset, p.field, lang_map.at(p.lang)}; };
  for (const auto& [token, list] : other.postings_) {
    auto& mine = postings_[token];
    for (const auto& p : list) mine.push_back(shift(p));
  }
  for (const auto& [value, list] : other.exact_) {
    auto& mine = exact_[value];
    for (const auto& p : list) mine.push_back(shift(p));
  }
  for (const auto& [key, list] : other.identifiers_) {
    auto& mine = identifiers_[key];
    for (auto d : list) mine.push_back(d + offset);
  }
  for (const auto& e : other.labels_) labels_.push_back(LabelEntry{e.normalized, e.doc + offset, lang_map.at(e.lang)});
  finish();
}

std::string SearchIndex::serialize() const {
  util::BinaryWriter w;
  w.raw(kMagic);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(languages_.size()));
  for (const auto& l : languages_) w.str(l);
  w.u32(static_cast<std::uint32_t>(documents_.size()));
  for (const auto& d : documents_) {
    for (const auto* s : {&d.iri, &d.ontology_id, &d.curie, &d.kind, &d.short_form, &d.default_language}) w.str(*s);
    write_map(w, d.labels);
    write_map(w, d.synonyms);
    write_map(w, d.definitions);
    write_map(w, d.annotation_fields);
    w.u8(static_cast<std::uint8_t>((d.is_obsolete ? 1 : 0) | (d.is_defining_ontology ? 2 : 0)));
  }
  auto write_postings = [&](const std::unordered_map<std::string, std::vector<Posting>>& m) {
    std::vector<const std::string*> keys;
    for (const auto& [k, v] : m) keys.push_back(&k);
    std::sort(keys.begin(), keys.end(), [](auto* a, auto* b) { return *a < *b; });
    w.u32(static_cast<std::uint32_t>(keys.size()));
    for (const auto* k : keys) {
      w.str(*k);
      const auto& list = m.at(*k);
      w.u32(static_cast<std::uint32_t>(list.size()));
      for (const auto& p : list) {
        w.u32(p.doc);
        w.u8(static_cast<std::uint8_t>(p.field));
        w.u32(p.lang);
      }
    }
  };
  write_postings(postings_);
  write_postings(exact_);
  std::vector<const std::string*> keys;
  for (const auto& [k, v] : identifiers_) keys.push_back(&k);
  std::sort(keys.begin(), keys.end(), [](auto* a, auto* b) { return *a < *b; });
  w.u32(static_cast<std::uint32_t>(keys.size()));
  for (const auto* k : keys) {
    w.str(*k);
    const auto& list = identifiers_.at(*k);
    w.u32(static_cast<std::uint32_t>(list.size()));
    for (auto d : list) w.u32(d);
  }
  w.u32(static_cast<std::uint32_t>(labels_.size()));
  for (const auto& e : labels_) {
    w.str(e.normalized);
    w.u32(e.doc);
    w.u32(e.lang);
  }
  return w.take();
}

SearchIndex SearchIndex::deserialize(std::string_view bytes) {
  util::BinaryReader r(bytes);
  r.expect(kMagic);
  if (r.u32() != kVersion) throw util::FormatError("unsupported index segment version");
  SearchIndex index;
  auto lang_count = r.count(4);
  for (std::uint32_t i = 0; i < lang_count; ++i) index.languages_.push_back(r.str());
  auto doc_count = r.count(30);
  for (std::uint32_t i = 0; i < doc_count; ++i) {
    SearchDocument d;
    for (auto* s : {&d.iri, &d.ontology_id, &d.curie, &d.kind, &d.short_form, &d.default_language}) *s = r.str();
    d.labels = read_map(r);
    d.synonyms = read_map(r);
    d.definitions = read_map(r);
    d.annotation_fields = read_map(r);
    auto flags = r.u8();
    d.is_obsolete = flags & 1;
    d.is_defining_ontology = flags & 2;
    index.documents_.push_back(std::move(d));
  }
  auto check = [&](std::uint32_t doc, std::uint32_t lang) {
    if (doc >= doc_count || lang >= lang_count) throw util::FormatError("index posting out of range");
  };
  auto read_postings = [&](std::unordered_map<std::string, std::vector<Posting>>& m) {
    auto n = r.count(8);
    for (std::uint32_t i = 0; i < n; ++i) {
      auto& list = m[r.str()];
      auto k = r.count(9);
      for (std::uint32_t j = 0; j < k; ++j) {
        auto doc = r.u32();
        auto field = r.u8();
        auto lang = r.u32();
        check(doc, lang);
        if (field > 2) throw util::FormatError("bad posting field");
        list.push_back(Posting{doc, static_cast<Field>(field), static_cast<std::uint16_t>(lang)});
      }
    }
  };
  read_postings(index.postings_);
  read_postings(index.exact_);
  auto id_count = r.count(8);
  for (std::uint32_t i = 0; i < id_count; ++i) {
    auto& list = index.identifiers_[r.str()];
    auto k = r.count(4);
    for (std::uint32_t j = 0; j < k; ++j) {
      auto doc = r.u32();
      check(doc, 0);
      list.push_back(doc);
    }
  }
  auto label_count = r.count(12);
  for (std::uint32_t i = 0; i < label_count; ++i) {
    LabelEntry e;
    e.normalized = r.str();
    e.doc = r.u32();
    auto lang = r.u32();
    check(e.doc, lang);
    e.lang = static_cast<std::uint16_t>(lang);
    index.labels_.push_back(std::move(e));
  }
  if (!r.done()) throw util::FormatError("trailing bytes in index segment");
  index.finish();
  return index;
}

std::size_t SearchIndex::posting_count(std::string_view token) const {
  auto it = postings_.find(std::string(token));
  if (it == postings_.end()) return 0;
  std::set<std::uint32_t> docs;
  for (const auto& p : it->second) docs.insert(p.doc);
  return docs.size();
}

std::size_t SearchIndex::exact_count(std::string_view value) const {
  auto it = exact_.find(std::string(value));
  return it == exact_.end() ? 0 : it->second.size();
}

std::pair<std::size_t, std::size_t> SearchIndex::prefix_range(std::string_view prefix) const {
  auto lo = std::lower_bound(labels_.begin(), labels_.end(), prefix,
                             [](const LabelEntry& e, std::string_view p) { return e.normalized < p; });
  auto hi = lo;
  while (hi != labels_.end() && std::string_view(hi->normalized).starts_with(prefix)) ++hi;
  return {static_cast<std::size_t>(lo - labels_.begin()), static_cast<std::size_t>(hi - labels_.begin())};
}

// A superset of the documents that can match in any tier and language.
std::vector<std::uint32_t> SearchIndex::candidates(const std::string& q, const std::vector<std::string>& tokens) const {
  std::vector<std::uint32_t> out;
  if (auto it = exact_.find(q); it != exact_.end()) {
    for (const auto& p : it->second) out.push_back(p.doc);
  }
  if (auto it = identifiers_.find(q); it != identifiers_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
  auto [lo, hi] = prefix_range(q);
  for (auto i = lo; i < hi; ++i) out.push_back(labels_[i].doc);
  if (!tokens.empty()) {
    std::vector<std::uint32_t> common;
    bool first = true;
    for (const auto& t : std::set<std::string>(tokens.begin(), tokens.end())) {
      auto it = postings_.find(t);
      if (it == postings_.end()) {
        common.clear();
        break;
      }
      std::vector<std::uint32_t> docs;
      for (const auto& p : it->second) docs.push_back(p.doc);
      std::sort(docs.begin(), docs.end());
      docs.erase(std::unique(docs.begin(), docs.end()), docs.end());
      if (first) {
        common = std::move(docs);
        first = false;
      } else {
        std::vector<std::uint32_t> both;
        std::set_intersection(common.begin(), common.end(), docs.begin(), docs.end(), std::back_inserter(both));
        common = std::move(both);
      }
      if (common.empty()) break;
    }
    out.insert(out.end(), common.begin(), common.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SearchResult SearchIndex::search(std::string_view query, const SearchFilters& filters, std::size_t page,
                                 std::size_t size) const {
  std::string q = normalize(query);
  if (q.empty()) throw QueryError(QueryError::Kind::invalid_query, "query must not be empty");
  if (size < 1 || size > kMaxPageSize) {
    throw QueryError(QueryError::Kind::invalid_parameter, "size must be between 1 and " + std::to_string(kMaxPageSize));
  }
  if (page > kMaxPage) throw QueryError(QueryError::Kind::invalid_parameter, "page out of range");
  auto tokens = tokenize(q);

  std::vector<RankedHit> hits;
  for (auto id : candidates(q, tokens)) {
    const auto& doc = documents_[id];
    if (filters.ontology && doc.ontology_id != *filters.ontology) continue;
    if (doc.is_obsolete && !filters.include_obsolete) continue;
    auto tier = match_tier(doc, q, tokens, filters.lang);
    if (!tier) continue;
    if (filters.exact && *tier != Tier::exact_label && *tier != Tier::exact_synonym && *tier != Tier::identifier) {
      continue;
    }
    std::string label = display_label(doc, filters.lang);
    hits.push_back(RankedHit{id, *tier, doc.is_obsolete, doc.is_defining_ontology, utf8_length(label), std::move(label)});
  }
  std::sort(hits.begin(), hits.end(), [&](const RankedHit& a, const RankedHit& b) {
    const auto& da = documents_[a.doc];
    const auto& db = documents_[b.doc];
    return std::forward_as_tuple(a.tier, a.is_obsolete, !a.is_defining_ontology, a.label_length, da.iri,
                                 da.ontology_id) < std::forward_as_tuple(b.tier, b.is_obsolete, !b.is_defining_ontology,
                                                                         b.label_length, db.iri, db.ontology_id);
  });
  SearchResult result;
  result.total = hits.size();
  auto begin = std::min(hits.size(), page * size);
  auto end = std::min(hits.size(), begin + size);
  result.hits.assign(std::make_move_iterator(hits.begin() + static_cast<std::ptrdiff_t>(begin)),
                     std::make_move_iterator(hits.begin() + static_cast<std::ptrdiff_t>(end)));
  return result;
}

std::vector<Suggestion> SearchIndex::suggest(std::string_view prefix, const std::optional<std::string>& ontology,
                                             std::string_view lang, std::size_t limit) const {
  std::string p = normalize(prefix);
  if (p.empty()) throw QueryError(QueryError::Kind::invalid_query, "prefix must not be empty");
  if (limit < 1 || limit > kMaxPageSize) {
    throw QueryError(QueryError::Kind::invalid_parameter, "limit must be between 1 and " + std::to_string(kMaxPageSize));
  }
  auto [lo, hi] = prefix_range(p);
  std::set<std::uint32_t> docs;
  for (auto i = lo; i < hi; ++i) docs.insert(labels_[i].doc);
  std::vector<Suggestion> out;
  for (auto id : docs) {
    const auto& doc = documents_[id];
    if (doc.is_obsolete || (ontology && doc.ontology_id != *ontology)) continue;
    const auto* labels = select_language(doc.labels, lang, doc.default_language);
    if (!labels) continue;
    for (const auto& label : *labels) {
      if (normalize(label).starts_with(p)) out.push_back(Suggestion{label, doc.iri, doc.ontology_id});
    }
  }
  std::sort(out.begin(), out.end(), [](const Suggestion& a, const Suggestion& b) {
    auto la = utf8_length(a.label), lb = utf8_length(b.label);
    return std::tie(la, a.label, a.iri, a.ontology_id) < std::tie(lb, b.label, b.iri, b.ontology_id);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() > limit) out.resize(limit);
  return out;
}

}  // namespace ontolookup::search
