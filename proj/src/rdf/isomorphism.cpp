#include "ontolookup/rdf/isomorphism.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ontolookup/rdf/ntriples_writer.hpp"

namespace ontolookup::rdf {
namespace {

struct Graph {
  std::span<const Triple> triples;
  std::vector<std::string> blanks;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<std::size_t>> incident;  // triple ids touching each blank

  explicit Graph(std::span<const Triple> t) : triples(t) {
    auto add = [&](const Term& term, std::size_t triple) {
      if (!term.is_blank()) return;
      auto [it, inserted] = index.try_emplace(term.value(), blanks.size());
      if (inserted) {
        blanks.push_back(term.value());
        incident.emplace_back();
      }
      auto& list = incident[it->second];
      if (list.empty() || list.back() != triple) list.push_back(triple);
    };
    for (std::size_t i = 0; i < triples.size(); ++i) {
      add(triples[i].subject, i);
      add(triples[i].object, i);
    }
  }
};

using Colours = std::vector<std::uint64_t>;

std::string ground_key(const Term& t) { return to_ntriples(t); }

std::string term_key(const Graph& g, const Colours& c, const Term& t, std::size_t self) {
  if (!t.is_blank()) return ground_key(t);
  std::size_t i = g.index.at(t.value());
  if (i == self) return "@self";
  return "@" + std::to_string(c[i]);
}

// One refinement round over both graphs with a shared signature dictionary so
// that equal colours mean equal neighbourhoods in either graph.
std::pair<Colours, Colours> refine_once(const Graph& ga, const Colours& ca, const Graph& gb,
                                        const Colours& cb) {
  std::map<std::string, std::uint64_t> dictionary;
  auto signatures = [](const Graph& g, const Colours& c) {
    std::vector<std::string> out(g.blanks.size());
    for (std::size_t n = 0; n < g.blanks.size(); ++n) {
      std::vector<std::string> parts;
      for (std::size_t t : g.incident[n]) {
        const Triple& tr = g.triples[t];
        std::string part;
        if (tr.subject.is_blank() && g.index.at(tr.subject.value()) == n) {
          part = "s|" + tr.predicate + "|" + term_key(g, c, tr.object, n);
          parts.push_back(part);
        }
        if (tr.object.is_blank() && g.index.at(tr.object.value()) == n) {
          part = "o|" + tr.predicate + "|" + term_key(g, c, tr.subject, n);
          parts.push_back(part);
        }
      }
      std::sort(parts.begin(), parts.end());
      std::string sig = std::to_string(c[n]);
      for (auto& p : parts) {
        sig += '\n';
        sig += p;
      }
      out[n] = std::move(sig);
    }
    return out;
  };
  auto sa = signatures(ga, ca);
  auto sb = signatures(gb, cb);
  for (auto& s : sa) dictionary.emplace(s, 0);
  for (auto& s : sb) dictionary.emplace(s, 0);
  std::uint64_t next = 1;
  for (auto& [k, v] : dictionary) v = next++;
  Colours na(sa.size()), nb(sb.size());
  for (std::size_t i = 0; i < sa.size(); ++i) na[i] = dictionary[sa[i]];
  for (std::size_t i = 0; i < sb.size(); ++i) nb[i] = dictionary[sb[i]];
  return {na, nb};
}

std::size_t distinct(const Colours& c) {
  Colours copy = c;
  std::sort(copy.begin(), copy.end());
  return static_cast<std::size_t>(std::unique(copy.begin(), copy.end()) - copy.begin());
}

bool same_histogram(Colours a, Colours b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

void refine(const Graph& ga, Colours& ca, const Graph& gb, Colours& cb) {
  while (true) {
    std::size_t before = distinct(ca) + distinct(cb);
    auto [na, nb] = refine_once(ga, ca, gb, cb);
    ca = std::move(na);
    cb = std::move(nb);
    if (distinct(ca) + distinct(cb) <= before) return;
  }
}

std::vector<std::string> relabelled(const Graph& g, const std::vector<std::string>& names) {
  std::vector<std::string> lines;
  lines.reserve(g.triples.size());
  for (const Triple& t : g.triples) {
    auto key = [&](const Term& term) {
      return term.is_blank() ? "_:" + names[g.index.at(term.value())] : ground_key(term);
    };
    lines.push_back(key(t.subject) + " <" + t.predicate + "> " + key(t.object));
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

std::optional<std::vector<std::size_t>> search(const Graph& ga, Colours ca, const Graph& gb,
                                               Colours cb, std::uint64_t& fresh) {
  refine(ga, ca, gb, cb);
  if (!same_histogram(ca, cb)) return std::nullopt;

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> classes_a;
  for (std::size_t i = 0; i < ca.size(); ++i) classes_a[ca[i]].push_back(i);
  const std::vector<std::size_t>* pick = nullptr;
  std::uint64_t pick_colour = 0;
  for (auto& [colour, members] : classes_a) {
    if (members.size() > 1 &&
        (!pick || members.size() < pick->size() ||
         (members.size() == pick->size() && colour < pick_colour))) {
      pick = &members;
      pick_colour = colour;
    }
  }

  if (!pick) {
    std::unordered_map<std::uint64_t, std::size_t> in_b;
    for (std::size_t i = 0; i < cb.size(); ++i) in_b[cb[i]] = i;
    std::vector<std::size_t> mapping(ca.size());
    std::vector<std::string> names_a(ca.size()), names_b(cb.size());
    for (std::size_t i = 0; i < ca.size(); ++i) {
      mapping[i] = in_b.at(ca[i]);
      names_a[i] = "n" + std::to_string(mapping[i]);
    }
    for (std::size_t j = 0; j < cb.size(); ++j) names_b[j] = "n" + std::to_string(j);
    if (relabelled(ga, names_a) == relabelled(gb, names_b)) return mapping;
    return std::nullopt;
  }

  std::size_t x = pick->front();
  for (std::size_t y = 0; y < cb.size(); ++y) {
    if (cb[y] != pick_colour) continue;
    Colours na = ca, nb = cb;
    std::uint64_t marker = ++fresh;
    na[x] = marker;
    nb[y] = marker;
    if (auto found = search(ga, std::move(na), gb, std::move(nb), fresh)) return found;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::map<std::string, std::string>> find_blank_bijection(std::span<const Triple> a,
                                                                       std::span<const Triple> b) {
  if (a.size() != b.size()) return std::nullopt;
  Graph ga(a), gb(b);
  if (ga.blanks.size() != gb.blanks.size()) return std::nullopt;

  auto ground = [](std::span<const Triple> ts) {
    std::vector<std::string> out;
    for (const auto& t : ts) {
      if (!t.subject.is_blank() && !t.object.is_blank()) out.push_back(to_ntriples(t));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  if (ground(a) != ground(b)) return std::nullopt;

  // Markers assigned during backtracking live far above refinement colours.
  std::uint64_t fresh = std::uint64_t{1} << 62;
  auto mapping = search(ga, Colours(ga.blanks.size(), 0), gb, Colours(gb.blanks.size(), 0), fresh);
  if (!mapping) return std::nullopt;
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < mapping->size(); ++i) out[ga.blanks[i]] = gb.blanks[(*mapping)[i]];
  return out;
}

}  // namespace ontolookup::rdf
