#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <vector>

#include "ontolookup/owl/model.hpp"
#include "ontolookup/rdf/term.hpp"

namespace ontolookup::load {

class LosslessError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical tree of an entity's consumed triples.
//
//   {"@id": iri, "<predicate>": [value, ...], "@related": [root, ...]}
//
// Values: plain string (xsd:string), {"@value", "@lang"|"@datatype"},
// {"@iri"}, {"@list": [...]}, a nested map for a blank node, or
// {"@ref": "_:bN"} for a blank node already written under "@id": "_:bN".
// owl:Axiom blocks that annotate one of the entity's own assertions appear as
// "@annotations" on that value; "@shared_target" marks a block that points at
// the very same blank node, "@target" carries a structurally equal copy.
// "@related" holds blocks not reachable from the entity (standalone
// reifications, AllDisjointClasses). Keys are sorted, values ordered by an
// id-independent structural key, so output bytes do not depend on blank ids.
nlohmann::json to_lossless(const owl::OwlEntity& entity);

// Inverse of to_lossless, up to blank node renaming.
std::vector<rdf::Triple> from_lossless(const nlohmann::json& value);

// Lossless encoding of one term outside a tree (IRIs, literals).
nlohmann::json term_to_json(const rdf::Term& term);

// Structured rendering of logical axioms, reified payloads included.
nlohmann::json axioms_to_json(const owl::OwlEntity& entity);
// Annotation assertions with their reified payloads, ordered by content.
nlohmann::json annotations_to_json(const owl::OwlEntity& entity);
nlohmann::json class_expression_to_json(const owl::ClassExpression& expression);
nlohmann::json property_expression_to_json(const owl::PropertyExpression& expression);

}  // namespace ontolookup::load
