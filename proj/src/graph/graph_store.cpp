#include "ontolookup/graph/graph_store.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ontolookup/util/binary_io.hpp"

namespace ontolookup::graph {

namespace {

constexpr std::string_view kMagic = "ONTOGRAPH";
constexpr std::uint32_t kVersion = 1;

}  // namespace

RelationFilter RelationFilter::all() {
  RelationFilter f;
  f.all_ = true;
  return f;
}

RelationFilter RelationFilter::only(std::vector<std::string> relations) {
  RelationFilter f;
  std::sort(relations.begin(), relations.end());
  relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
  f.relations_ = std::move(relations);
  return f;
}

bool RelationFilter::admits(std::string_view relation) const {
  return all_ || std::binary_search(relations_.begin(), relations_.end(), relation);
}

GraphSegment GraphSegment::build(std::string ontology_id, std::vector<NodeInput> inputs) {
  GraphSegment g;
  g.ontology_id_ = std::move(ontology_id);

  std::map<std::string, std::size_t> by_iri;
  std::vector<NodeInput*> unique;
  for (auto& n : inputs) {
    if (by_iri.emplace(n.iri, unique.size()).second) unique.push_back(&n);
  }
  std::set<std::string> placeholders;
  for (auto* n : unique) {
    for (const auto& e : n->edges) {
      if (!by_iri.contains(e.target)) placeholders.insert(e.target);
    }
  }
  std::set<std::string> relation_names{std::string(kSubclassOf)};
  for (auto* n : unique) {
    for (const auto& e : n->edges) relation_names.insert(e.relation);
  }
  g.relations_.assign(relation_names.begin(), relation_names.end());

  std::vector<std::string> iris;
  for (auto& [iri, i] : by_iri) iris.push_back(iri);
  iris.insert(iris.end(), placeholders.begin(), placeholders.end());
  std::sort(iris.begin(), iris.end());
  g.nodes_.reserve(iris.size());
  for (const auto& iri : iris) {
    auto it = by_iri.find(iri);
    if (it == by_iri.end()) {
      g.nodes_.push_back(Node{iri, {}, false, true, std::nullopt});
    } else {
      const auto& n = *unique[it->second];
      g.nodes_.push_back(Node{n.iri, n.label, n.is_obsolete, n.is_class, n.defining_ontology});
    }
  }

  std::vector<std::vector<Edge>> outgoing(g.nodes_.size());
  for (auto* n : unique) {
    auto source = *g.index_of(n->iri);
    for (const auto& e : n->edges) {
      auto relation = static_cast<std::uint32_t>(
          std::lower_bound(g.relations_.begin(), g.relations_.end(), e.relation) - g.relations_.begin());
      outgoing[source].push_back(Edge{relation, *g.index_of(e.target)});
    }
  }
  for (auto& list : outgoing) {
    std::sort(list.begin(), list.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.node, a.relation) < std::tie(b.node, b.relation); });
    list.erase(std::unique(list.begin(), list.end(),
                           [](const Edge& a, const Edge& b) { return a.node == b.node && a.relation == b.relation; }),
               list.end());
  }
  g.link_edges(outgoing);
  return g;
}

void GraphSegment::link_edges(const std::vector<std::vector<Edge>>& outgoing) {
  std::vector<std::vector<Edge>> incoming(nodes_.size());
  out_offsets_.assign(1, 0);
  out_.clear();
  for (std::uint32_t source = 0; source < outgoing.size(); ++source) {
    for (const auto& e : outgoing[source]) {
      out_.push_back(e);
      incoming[e.node].push_back(Edge{e.relation, source});
    }
    out_offsets_.push_back(static_cast<std::uint32_t>(out_.size()));
  }
  in_offsets_.assign(1, 0);
  in_.clear();
  for (const auto& list : incoming) {
    in_.insert(in_.end(), list.begin(), list.end());
    in_offsets_.push_back(static_cast<std::uint32_t>(in_.size()));
  }
}

std::string GraphSegment::serialize() const {
  util::BinaryWriter w;
  w.raw(kMagic);
  w.u32(kVersion);
  w.str(ontology_id_);
  w.u32(static_cast<std::uint32_t>(relations_.size()));
  for (const auto& r : relations_) w.str(r);
  w.u32(static_cast<std::uint32_t>(nodes_.size()));
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    w.str(n.iri);
    w.str(n.label);
    w.u8(static_cast<std::uint8_t>((n.is_obsolete ? 1 : 0) | (n.is_class ? 2 : 0) | (n.defining_ontology ? 4 : 0)));
    if (n.defining_ontology) w.str(*n.defining_ontology);
    w.u32(out_offsets_[i + 1] - out_offsets_[i]);
    for (auto k = out_offsets_[i]; k < out_offsets_[i + 1]; ++k) {
      w.u32(out_[k].relation);
      w.u32(out_[k].node);
    }
  }
  return w.take();
}

GraphSegment GraphSegment::deserialize(std::string_view bytes) {
  util::BinaryReader r(bytes);
  r.expect(kMagic);
  if (r.u32() != kVersion) throw util::FormatError("unsupported graph segment version");
  GraphSegment g;
  g.ontology_id_ = r.str();
  auto relation_count = r.count(4);
  for (std::uint32_t i = 0; i < relation_count; ++i) g.relations_.push_back(r.str());
  auto node_count = r.count(10);
  g.nodes_.reserve(node_count);
  std::vector<std::vector<Edge>> outgoing(node_count);
  for (std::uint32_t i = 0; i < node_count; ++i) {
    Node n;
    n.iri = r.str();
    n.label = r.str();
    auto flags = r.u8();
    n.is_obsolete = flags & 1;
    n.is_class = flags & 2;
    if (flags & 4) n.defining_ontology = r.str();
    if (!g.nodes_.empty() && !(g.nodes_.back().iri < n.iri)) throw util::FormatError("graph nodes out of order");
    g.nodes_.push_back(std::move(n));
    auto edges = r.count(8);
    for (std::uint32_t k = 0; k < edges; ++k) {
      Edge e{r.u32(), r.u32()};
      if (e.relation >= relation_count || e.node >= node_count) throw util::FormatError("graph edge out of range");
      outgoing[i].push_back(e);
    }
  }
  if (!r.done()) throw util::FormatError("trailing bytes in graph segment");
  g.link_edges(outgoing);
  return g;
}

std::optional<std::uint32_t> GraphSegment::index_of(std::string_view iri) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), iri,
                             [](const Node& n, std::string_view key) { return n.iri < key; });
  if (it == nodes_.end() || it->iri != iri) return std::nullopt;
  return static_cast<std::uint32_t>(it - nodes_.begin());
}

std::uint32_t GraphSegment::require(std::string_view iri) const {
  auto i = index_of(iri);
  if (!i) throw NodeNotFound(std::string(iri) + " is not in the " + ontology_id_ + " hierarchy");
  return *i;
}

std::vector<bool> GraphSegment::admitted(const RelationFilter& filter) const {
  std::vector<bool> out(relations_.size());
  for (std::size_t i = 0; i < relations_.size(); ++i) out[i] = filter.admits(relations_[i]);
  return out;
}

GraphNode GraphSegment::view(std::uint32_t n, const std::vector<bool>& admitted) const {
  const auto& node = nodes_[n];
  bool has_children = false;
  for (auto k = in_offsets_[n]; k < in_offsets_[n + 1] && !has_children; ++k) has_children = admitted[in_[k].relation];
  return GraphNode{node.iri, ontology_id_, node.label, node.is_obsolete, node.defining_ontology, has_children};
}

GraphNode GraphSegment::node(std::string_view iri, const RelationFilter& filter) const {
  return view(require(iri), admitted(filter));
}

NodeList GraphSegment::sorted_by_label(std::vector<std::uint32_t> nodes, const std::vector<bool>& admitted,
                                       std::size_t cap) const {
  auto key = [&](std::uint32_t n) -> const std::string& {
    return nodes_[n].label.empty() ? nodes_[n].iri : nodes_[n].label;
  };
  std::sort(nodes.begin(), nodes.end(), [&](std::uint32_t a, std::uint32_t b) {
    int c = key(a).compare(key(b));
    return c != 0 ? c < 0 : a < b;
  });
  NodeList out;
  out.truncated = nodes.size() > cap;
  if (out.truncated) nodes.resize(cap);
  for (auto n : nodes) out.nodes.push_back(view(n, admitted));
  return out;
}

NodeList GraphSegment::neighbours(std::string_view iri, const RelationFilter& filter, std::size_t cap,
                                  bool up) const {
  auto start = require(iri);
  auto ok = admitted(filter);
  const auto& offsets = up ? out_offsets_ : in_offsets_;
  const auto& edges = up ? out_ : in_;
  std::vector<std::uint32_t> found;
  for (auto k = offsets[start]; k < offsets[start + 1]; ++k) {
    if (ok[edges[k].relation]) found.push_back(edges[k].node);
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return sorted_by_label(std::move(found), ok, cap);
}

NodeList GraphSegment::closure(std::string_view iri, const RelationFilter& filter, std::size_t cap, bool up) const {
  auto start = require(iri);
  auto ok = admitted(filter);
  const auto& offsets = up ? out_offsets_ : in_offsets_;
  const auto& edges = up ? out_ : in_;
  std::vector<bool> visited(nodes_.size());
  visited[start] = true;
  std::vector<std::uint32_t> frontier{start};
  NodeList out;
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
    for (auto n : frontier) {
      for (auto k = offsets[n]; k < offsets[n + 1]; ++k) {
        if (!ok[edges[k].relation] || visited[edges[k].node]) continue;
        visited[edges[k].node] = true;
        next.push_back(edges[k].node);
      }
    }
    // Node indices follow IRI order.
    std::sort(next.begin(), next.end());
    for (auto n : next) {
      if (out.nodes.size() == cap) {
        out.truncated = true;
        return out;
      }
      out.nodes.push_back(view(n, ok));
    }
    frontier = std::move(next);
  }
  return out;
}

NodeList GraphSegment::parents(std::string_view iri, const RelationFilter& filter, std::size_t cap) const {
  return neighbours(iri, filter, cap, true);
}

NodeList GraphSegment::children(std::string_view iri, const RelationFilter& filter, std::size_t cap) const {
  return neighbours(iri, filter, cap, false);
}

NodeList GraphSegment::ancestors(std::string_view iri, const RelationFilter& filter, std::size_t cap) const {
  return closure(iri, filter, cap, true);
}

NodeList GraphSegment::descendants(std::string_view iri, const RelationFilter& filter, std::size_t cap) const {
  return closure(iri, filter, cap, false);
}

NodeList GraphSegment::roots(const RelationFilter& filter, bool include_obsolete, std::size_t cap) const {
  auto ok = admitted(filter);
  std::vector<std::uint32_t> found;
  for (std::uint32_t n = 0; n < nodes_.size(); ++n) {
    if (!nodes_[n].is_class || (nodes_[n].is_obsolete && !include_obsolete)) continue;
    bool has_parent = false;
    for (auto k = out_offsets_[n]; k < out_offsets_[n + 1] && !has_parent; ++k) has_parent = ok[out_[k].relation];
    if (!has_parent) found.push_back(n);
  }
  return sorted_by_label(std::move(found), ok, cap);
}

}  // namespace ontolookup::graph
