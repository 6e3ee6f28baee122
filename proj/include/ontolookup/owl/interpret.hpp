#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ontolookup/owl/model.hpp"
#include "ontolookup/rdf/term.hpp"

namespace ontolookup::owl {

// Read-only lookup over one triple multiset. Triples keep their input
// positions, which are the unit of consumption accounting.
class TripleIndex {
 public:
  explicit TripleIndex(std::vector<rdf::Triple> triples);

  const std::vector<rdf::Triple>& triples() const { return triples_; }
  const rdf::Triple& at(std::size_t i) const { return triples_[i]; }
  std::size_t size() const { return triples_.size(); }

  std::span<const std::size_t> by_subject(const rdf::Term& subject) const;
  std::span<const std::size_t> by_object(const rdf::Term& object) const;
  std::vector<std::size_t> with_predicate(const rdf::Term& subject, std::string_view predicate) const;

  // Positions of all triples reachable from `node` through blank subjects,
  // sorted. Empty for IRIs and literals.
  std::vector<std::size_t> blank_closure(const rdf::Term& node) const;

  // Canonical text for a term including the structure below blank nodes;
  // equal for structurally identical copies. Cycle-safe.
  std::string structure_key(const rdf::Term& node) const;

 private:
  std::vector<rdf::Triple> triples_;
  std::unordered_map<rdf::Term, std::vector<std::size_t>, rdf::TermHash> by_subject_;
  std::unordered_map<rdf::Term, std::vector<std::size_t>, rdf::TermHash> by_object_;
};

class ExpressionError : public std::runtime_error {
 public:
  ExpressionError(const rdf::Term& node, const std::string& message);
  const rdf::Term& node() const { return node_; }

 private:
  rdf::Term node_;
};

// The resolvers append the positions of every triple they read to `consumed`
// (when given) and throw ExpressionError on malformed input.
ClassExpression resolve_class_expression(const rdf::Term& node, const TripleIndex& index,
                                         std::vector<std::size_t>* consumed = nullptr);
PropertyExpression resolve_property_expression(const rdf::Term& node, const TripleIndex& index,
                                               std::vector<std::size_t>* consumed = nullptr);
// Walks an rdf:first/rest list; rdf:nil yields an empty list.
std::vector<rdf::Term> read_list(const rdf::Term& head, const TripleIndex& index,
                                 std::vector<std::size_t>* consumed = nullptr);

struct AttributedAxiom {
  std::string subject;
  LogicalAxiom axiom;
  std::vector<std::size_t> consumed;
};

struct Rejection {
  std::string subject;  // may be empty for subject-less blocks
  std::string reason;
  std::vector<std::size_t> triples;
};

struct AxiomBatch {
  std::vector<AttributedAxiom> axioms;
  std::vector<Rejection> rejected;
};

// disjoint_with axioms from owl:disjointWith, and all_disjoint_classes axioms
// (one per member) from owl:AllDisjointClasses blocks.
AxiomBatch interpret_disjointness(const TripleIndex& index);
AxiomBatch interpret_property_chain(const TripleIndex& index);

struct CollectedReification {
  ReifiedAnnotation annotation;
  std::vector<std::size_t> consumed;
};

struct ReificationBatch {
  std::vector<CollectedReification> reified;  // unattached
  std::vector<Rejection> rejected;
};

ReificationBatch collect_reified(const TripleIndex& index);

AssembledOntology assemble(std::vector<rdf::Triple> triples);

// Sorted, de-duplicated language tags of literal annotation values.
std::vector<std::string> collect_languages(std::span<const OwlEntity> entities);

// Predicates that become logical axioms rather than annotations.
bool is_structural_predicate(std::string_view predicate);

}  // namespace ontolookup::owl
