#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ontolookup::graph {

// Relation name of rdfs:subClassOf edges; other relations are property IRIs.
inline constexpr std::string_view kSubclassOf = "subclass_of";
inline constexpr std::size_t kDefaultResultCap = 10000;

struct OutgoingEdge {
  std::string relation;
  std::string target;
};

struct NodeInput {
  std::string iri;
  std::string label;  // default-language label, may be empty
  bool is_obsolete = false;
  bool is_class = true;
  std::optional<std::string> defining_ontology;
  std::vector<OutgoingEdge> edges;
};

class RelationFilter {
 public:
  static RelationFilter subclass_only() { return only({std::string(kSubclassOf)}); }
  static RelationFilter all();
  static RelationFilter only(std::vector<std::string> relations);

  bool admits(std::string_view relation) const;
  bool admits_everything() const { return all_; }

 private:
  bool all_ = false;
  std::vector<std::string> relations_;
};

struct GraphNode {
  std::string iri;
  std::string ontology_id;
  std::string label;
  bool is_obsolete = false;
  std::optional<std::string> defining_ontology;
  bool has_children = false;  // under the filter of the query that produced it
};

struct NodeList {
  std::vector<GraphNode> nodes;
  bool truncated = false;
};

class NodeNotFound : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hierarchy of one ontology. Immutable once built.
class GraphSegment {
 public:
  GraphSegment() = default;

  // Edges to IRIs without an input node get a bare placeholder node.
  // Duplicate edges collapse.
  static GraphSegment build(std::string ontology_id, std::vector<NodeInput> nodes);

  std::string serialize() const;
  static GraphSegment deserialize(std::string_view bytes);

  const std::string& ontology_id() const { return ontology_id_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return out_.size(); }
  bool contains(std::string_view iri) const { return index_of(iri).has_value(); }
  const std::vector<std::string>& relations() const { return relations_; }

  GraphNode node(std::string_view iri, const RelationFilter& filter = RelationFilter::subclass_only()) const;

  // Sorted by label, then IRI.
  NodeList parents(std::string_view iri, const RelationFilter& filter, std::size_t cap = kDefaultResultCap) const;
  NodeList children(std::string_view iri, const RelationFilter& filter, std::size_t cap = kDefaultResultCap) const;
  // Breadth-first, start excluded, each node once, IRI order within a level.
  NodeList ancestors(std::string_view iri, const RelationFilter& filter, std::size_t cap = kDefaultResultCap) const;
  NodeList descendants(std::string_view iri, const RelationFilter& filter,
                       std::size_t cap = kDefaultResultCap) const;
  // Classes without outgoing filtered edges, sorted by label, then IRI.
  NodeList roots(const RelationFilter& filter, bool include_obsolete = false,
                 std::size_t cap = kDefaultResultCap) const;

 private:
  struct Node {
    std::string iri;
    std::string label;
    bool is_obsolete = false;
    bool is_class = true;
    std::optional<std::string> defining_ontology;
  };
  struct Edge {
    std::uint32_t relation;
    std::uint32_t node;
  };

  std::optional<std::uint32_t> index_of(std::string_view iri) const;
  std::uint32_t require(std::string_view iri) const;
  std::vector<bool> admitted(const RelationFilter& filter) const;
  GraphNode view(std::uint32_t n, const std::vector<bool>& admitted) const;
  NodeList neighbours(std::string_view iri, const RelationFilter& filter, std::size_t cap, bool up) const;
  NodeList closure(std::string_view iri, const RelationFilter& filter, std::size_t cap, bool up) const;
  NodeList sorted_by_label(std::vector<std::uint32_t> nodes, const std::vector<bool>& admitted,
                           std::size_t cap) const;
  void link_edges(const std::vector<std::vector<Edge>>& outgoing);

  std::string ontology_id_;
  std::vector<Node> nodes_;  // sorted by IRI
  std::vector<std::string> relations_;
  std::vector<std::uint32_t> out_offsets_, in_offsets_;
  std::vector<Edge> out_, in_;
};

}  // namespace ontolookup::graph
