#include "ontolookup/owl/model.hpp"

#include <algorithm>
#include <array>

namespace ontolookup::owl {

namespace {

constexpr std::array<std::pair<EntityKind, std::string_view>, 6> kEntityKindNames{{
    {EntityKind::ontology, "ontology"},
    {EntityKind::object_property, "object-property"},
    {EntityKind::datatype_property, "datatype-property"},
    {EntityKind::annotation_property, "annotation-property"},
    {EntityKind::class_, "class"},
    {EntityKind::individual, "individual"},
}};

}  // namespace

std::string_view to_string(EntityKind kind) {
  for (auto& [k, name] : kEntityKindNames) {
    if (k == kind) return name;
  }
  return "class";
}

std::optional<EntityKind> parse_entity_kind(std::string_view text) {
  for (auto& [k, name] : kEntityKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

bool is_property(EntityKind kind) {
  return kind == EntityKind::object_property || kind == EntityKind::datatype_property ||
         kind == EntityKind::annotation_property;
}

PropertyExpression PropertyExpression::named_property(std::string iri) {
  PropertyExpression p;
  p.kind = Kind::named;
  p.iri = std::move(iri);
  return p;
}

PropertyExpression PropertyExpression::inverse(std::string iri) {
  PropertyExpression p;
  p.kind = Kind::inverse_of;
  p.iri = std::move(iri);
  return p;
}

ClassExpression ClassExpression::named_class(std::string iri) {
  ClassExpression c;
  c.kind = Kind::named;
  c.iri = std::move(iri);
  return c;
}

std::string_view to_string(Characteristic c) {
  switch (c) {
    case Characteristic::transitive: return "transitive";
    case Characteristic::symmetric: return "symmetric";
    case Characteristic::asymmetric: return "asymmetric";
    case Characteristic::reflexive: return "reflexive";
    case Characteristic::irreflexive: return "irreflexive";
    case Characteristic::functional: return "functional";
    case Characteristic::inverse_functional: return "inverse_functional";
  }
  return "transitive";
}

std::string_view to_string(LogicalAxiom::Kind kind) {
  using K = LogicalAxiom::Kind;
  switch (kind) {
    case K::sub_class_of: return "sub_class_of";
    case K::equivalent_class: return "equivalent_class";
    case K::disjoint_with: return "disjoint_with";
    case K::sub_property_of: return "sub_property_of";
    case K::property_chain: return "property_chain";
    case K::inverse_of: return "inverse_of";
    case K::domain: return "domain";
    case K::range: return "range";
    case K::characteristic: return "characteristic";
    case K::type_assertion: return "type_assertion";
    case K::same_as: return "same_as";
    case K::different_from: return "different_from";
    case K::all_disjoint_classes: return "all_disjoint_classes";
  }
  return "sub_class_of";
}

std::vector<const AnnotationValue*> OwlEntity::annotation_values(std::string_view property) const {
  std::vector<const AnnotationValue*> out;
  for (const auto& a : annotations) {
    if (a.property == property) out.push_back(&a.value);
  }
  return out;
}

const OwlEntity* AssembledOntology::find(std::string_view iri) const {
  auto it = std::lower_bound(entities.begin(), entities.end(), iri,
                             [](const OwlEntity& e, std::string_view v) { return e.iri < v; });
  if (it != entities.end() && it->iri == iri) return &*it;
  if (header && header->iri == iri) return &*header;
  return nullptr;
}

}  // namespace ontolookup::owl
