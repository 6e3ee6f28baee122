#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontolookup/rdf/term.hpp"

namespace ontolookup::owl {

enum class EntityKind : std::uint8_t {
  ontology,
  object_property,
  datatype_property,
  annotation_property,
  class_,
  individual,
};

// "class", "object-property", ...
std::string_view to_string(EntityKind kind);
std::optional<EntityKind> parse_entity_kind(std::string_view text);

bool is_property(EntityKind kind);

struct PropertyExpression {
  enum class Kind : std::uint8_t { named, inverse_of, chain };

  Kind kind = Kind::named;
  std::string iri;                        // named, inverse_of
  std::vector<PropertyExpression> chain;  // chain

  static PropertyExpression named_property(std::string iri);
  static PropertyExpression inverse(std::string iri);

  friend bool operator==(const PropertyExpression&, const PropertyExpression&) = default;
};

enum class CardinalityKind : std::uint8_t { min, max, exact };

struct ClassExpression {
  enum class Kind : std::uint8_t {
    named,
    some_values_from,
    all_values_from,
    has_value,
    intersection,
    union_of,
    complement,
    one_of,
    cardinality,
  };

  Kind kind = Kind::named;
  std::string iri;                        // named
  PropertyExpression property;            // restrictions
  std::vector<ClassExpression> operands;  // boolean operands; restriction filler (0 or 1)
  std::vector<rdf::Term> values;          // has_value (1), one_of (n)
  CardinalityKind cardinality_kind = CardinalityKind::min;
  std::uint64_t cardinality = 0;

  static ClassExpression named_class(std::string iri);

  bool is_named() const { return kind == Kind::named; }

  friend bool operator==(const ClassExpression&, const ClassExpression&) = default;
};

enum class Characteristic : std::uint8_t {
  transitive,
  symmetric,
  asymmetric,
  reflexive,
  irreflexive,
  functional,
  inverse_functional,
};

std::string_view to_string(Characteristic c);

// Index of a ReifiedAnnotation within its entity's `reified` list.
using ReifiedIndex = std::size_t;

struct LogicalAxiom {
  enum class Kind : std::uint8_t {
    sub_class_of,
    equivalent_class,
    disjoint_with,
    sub_property_of,
    property_chain,
    inverse_of,
    domain,
    range,
    characteristic,
    type_assertion,
    same_as,
    different_from,
    all_disjoint_classes,
  };

  Kind kind = Kind::sub_class_of;
  ClassExpression expression;           // class-valued kinds
  PropertyExpression property;          // sub_property_of, property_chain
  std::string iri;                      // inverse_of, same_as, different_from
  Characteristic characteristic = Characteristic::transitive;
  std::vector<ClassExpression> members;  // all_disjoint_classes

  // The asserting triple's predicate and object. Empty predicate for
  // all_disjoint_classes, whose source is a separate block.
  std::string source_predicate;
  rdf::Term source_object;
  std::size_t source_triple_count = 0;
  std::vector<ReifiedIndex> reified;
};

std::string_view to_string(LogicalAxiom::Kind kind);

struct AnnotationValue {
  // Literal, IRI reference, or a blank node whose subtree lives in the owning
  // entity's consumed triples.
  rdf::Term value;
  std::vector<ReifiedIndex> reified;

  bool is_anonymous() const { return value.is_blank(); }
};

struct Annotation {
  std::string property;
  AnnotationValue value;
};

struct PayloadEntry {
  std::string property;
  rdf::Term value;
};

struct ReifiedAnnotation {
  std::string annotated_subject;
  std::string annotated_property;
  rdf::Term annotated_target;
  std::vector<PayloadEntry> payload;  // excludes the structural triples

  enum class Attachment : std::uint8_t { standalone, annotation, axiom };
  Attachment attachment = Attachment::standalone;
  std::size_t attached_index = 0;  // into annotations or logical_axioms
  // The blank target is the very node the direct assertion points at, not a copy.
  bool shared_target = false;
  rdf::Term node;  // the owl:Axiom blank node
};

struct OwlEntity {
  std::string iri;
  EntityKind kind = EntityKind::class_;
  // Referenced but never a subject in the input.
  bool stub = false;
  std::vector<std::string> declarations;  // winning rdf:type IRIs
  std::vector<Annotation> annotations;    // source order
  std::vector<LogicalAxiom> logical_axioms;
  std::vector<ReifiedAnnotation> reified;
  // Every input triple attributed to this entity, in input order.
  std::vector<rdf::Triple> consumed;

  std::vector<const AnnotationValue*> annotation_values(std::string_view property) const;
};

struct DanglingTriple {
  rdf::Triple triple;
  std::string reason;
  // Entity the triple hangs off when it was rejected while interpreting one.
  std::string entity;
};

struct AssembledOntology {
  std::optional<OwlEntity> header;
  std::vector<OwlEntity> entities;  // header excluded; sorted by IRI
  std::vector<DanglingTriple> dangling;
  std::size_t input_triples = 0;

  const OwlEntity* find(std::string_view iri) const;
};

}  // namespace ontolookup::owl
