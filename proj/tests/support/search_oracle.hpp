#pragma once

// Seeded random search corpus and a linear-scan reference scorer.

#include <algorithm>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ontolookup/search/search_index.hpp"

namespace search_oracle {

using namespace ontolookup::search;
using Strings = std::vector<std::string>;

inline const Strings kWords = {"lung",   "left",  "right", "lobe",  "epithelium", "heart", "cell",   "blood",
                        "Lunge",  "organ", "part",  "upper", "lower",      "vessel", "Herz", "poumon"};

inline std::string phrase(std::mt19937& rng, int max_words) {
  std::uniform_int_distribution<int> n(1, max_words), w(0, static_cast<int>(kWords.size()) - 1);
  std::string out;
  for (int i = n(rng); i > 0; --i) out += (out.empty() ? "" : " ") + kWords[w(rng)];
  return out;
}

inline std::vector<SearchDocument> random_corpus(std::mt19937& rng, int size) {
  const Strings langs = {"en", "de", "fr"};
  const Strings ontologies = {"efo", "chebi", "uberon"};
  std::bernoulli_distribution coin(0.5), rare(0.15);
  std::vector<SearchDocument> docs;
  std::set<std::pair<std::string, std::string>> seen;
  for (int i = 0; static_cast<int>(docs.size()) < size; ++i) {
    SearchDocument d;
    d.ontology_id = ontologies[i % 3];
    // Some IRIs recur across ontologies; one document per (ontology, iri).
    d.iri = "http://x/T_" + std::to_string(i % 4 == 0 ? rng() % 20 : 100 + i);
    if (!seen.emplace(d.ontology_id, d.iri).second) continue;
    d.short_form = d.iri.substr(9);
    d.curie = "T:" + std::to_string(i);
    d.kind = "class";
    for (const auto& l : langs) {
      if (l == "en" ? !rare(rng) : coin(rng)) d.labels[l].push_back(phrase(rng, 3));
      if (rare(rng)) d.labels[l].push_back(phrase(rng, 2));
      if (coin(rng)) d.synonyms[l].push_back(phrase(rng, 2));
      if (coin(rng)) d.definitions[l].push_back(phrase(rng, 5));
    }
    for (auto* m : {&d.labels, &d.synonyms, &d.definitions}) {
      for (auto& [l, v] : *m) std::sort(v.begin(), v.end());
    }
    d.default_language = rare(rng) ? "de" : "en";
    d.is_obsolete = rare(rng);
    d.is_defining_ontology = !rare(rng);
    docs.push_back(std::move(d));
  }
  return docs;
}

// Independent reference: regex tokenizer, explicit fallback, linear scan.
struct Oracle {
  static std::string low(std::string s) {
    for (auto& c : s) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    }
    return s;
  }
  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\n\r\f\v");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\n\r\f\v") - b + 1);
  }
  static std::set<std::string> words(const std::string& text) {
    static const std::regex token("[A-Za-z0-9:_\\x80-\\xff]+");
    std::set<std::string> out;
    std::string lowered = low(text);
    for (std::sregex_iterator it(lowered.begin(), lowered.end(), token), end; it != end; ++it) {
      std::string t = it->str();
      while (!t.empty() && t.front() == ':') t.erase(0, 1);
      while (!t.empty() && t.back() == ':') t.pop_back();
      if (t.empty()) continue;
      out.insert(t);
      std::stringstream parts(t);
      for (std::string p; std::getline(parts, p, ':');) {
        if (!p.empty()) out.insert(p);
      }
    }
    return out;
  }
  static Strings pick(const LanguageMap& m, const std::string& lang, const std::string& fallback) {
    for (const auto& l : {lang, fallback}) {
      if (m.contains(l) && !m.at(l).empty()) return m.at(l);
    }
    for (const auto& [l, v] : m) {
      if (!v.empty()) return v;
    }
    return {};
  }
  static int tier(const SearchDocument& d, const std::string& raw_query, const std::string& lang) {
    std::string q = low(trim(raw_query));
    auto qt = words(q);
    auto labels = pick(d.labels, lang, d.default_language);
    auto syns = pick(d.synonyms, lang, d.default_language);
    auto defs = pick(d.definitions, lang, d.default_language);
    int best = 0;
    auto consider = [&](int t) { best = best == 0 ? t : std::min(best, t); };
    for (const auto& l : labels) {
      if (low(l) == q) consider(1);
      if (low(l).rfind(q, 0) == 0) consider(3);
    }
    for (const auto& s : syns) {
      if (low(s) == q) consider(2);
    }
    auto covers = [&](const Strings& texts) {
      std::set<std::string> have;
      for (const auto& t : texts) {
        auto w = words(t);
        have.insert(w.begin(), w.end());
      }
      return !qt.empty() && std::includes(have.begin(), have.end(), qt.begin(), qt.end());
    };
    Strings names = labels;
    names.insert(names.end(), syns.begin(), syns.end());
    if (covers(names)) consider(4);
    if (covers(defs)) consider(5);
    if (low(d.curie) == q || low(d.short_form) == q) consider(6);
    return best;
  }
  static std::size_t chars(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xc0) != 0x80;
    return n;
  }
  static std::vector<std::pair<std::string, std::string>> run(const std::vector<SearchDocument>& docs,
                                                              const std::string& query, const SearchFilters& f) {
    struct Row {
      int tier;
      bool obsolete, not_defining;
      std::size_t length;
      std::string iri, ontology;
    };
    std::vector<Row> rows;
    for (const auto& d : docs) {
      if (f.ontology && d.ontology_id != *f.ontology) continue;
      if (d.is_obsolete && !f.include_obsolete) continue;
      int t = tier(d, query, f.lang);
      if (t == 0 || (f.exact && t != 1 && t != 2 && t != 6)) continue;
      auto labels = pick(d.labels, f.lang, d.default_language);
      std::string label = labels.empty() ? d.short_form : labels.front();
      rows.push_back({t, d.is_obsolete, !d.is_defining_ontology, chars(label), d.iri, d.ontology_id});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      return std::tie(a.tier, a.obsolete, a.not_defining, a.length, a.iri, a.ontology) <
             std::tie(b.tier, b.obsolete, b.not_defining, b.length, b.iri, b.ontology);
    });
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& r : rows) out.emplace_back(r.ontology, r.iri);
    return out;
  }
};

inline std::vector<std::pair<std::string, std::string>> keys(const SearchIndex& index, const SearchResult& r) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& h : r.hits) out.emplace_back(index.document(h.doc).ontology_id, index.document(h.doc).iri);
  return out;
}

inline std::string random_query(std::mt19937& rng, const std::vector<SearchDocument>& docs) {
  const auto& d = docs[rng() % docs.size()];
  switch (rng() % 6) {
    case 0: {
      auto labels = Oracle::pick(d.labels, "en", d.default_language);
      return labels.empty() ? "lung" : labels.front();
    }
    case 1: {
      auto labels = Oracle::pick(d.labels, "de", d.default_language);
      return labels.empty() ? "Lunge" : labels.front().substr(0, 1 + rng() % labels.front().size());
    }
    case 2:
      return rng() % 2 ? d.curie : d.short_form;
    case 3:
      return Oracle::low(phrase(rng, 2));
    case 4:
      return kWords[rng() % kWords.size()].substr(0, 2);
    default:
      return "  " + phrase(rng, 1) + " ";
  }
}

}  // namespace search_oracle
