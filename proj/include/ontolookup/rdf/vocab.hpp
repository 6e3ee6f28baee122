#pragma once

#include <string_view>

// IRIs of the vocabularies the loader interprets.
namespace ontolookup::vocab {

namespace rdf {
inline constexpr std::string_view ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view first = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
inline constexpr std::string_view rest = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
inline constexpr std::string_view nil = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
inline constexpr std::string_view lang_string = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
inline constexpr std::string_view property = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
}  // namespace rdf

namespace rdfs {
inline constexpr std::string_view ns = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view label = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view comment = "http://www.w3.org/2000/01/rdf-schema#comment";
inline constexpr std::string_view sub_class_of = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view sub_property_of = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
inline constexpr std::string_view domain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view range = "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr std::string_view class_ = "http://www.w3.org/2000/01/rdf-schema#Class";
inline constexpr std::string_view datatype = "http://www.w3.org/2000/01/rdf-schema#Datatype";
}  // namespace rdfs

namespace xsd {
inline constexpr std::string_view ns = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view string = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view boolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view integer = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view decimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view double_ = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view non_negative_integer =
    "http://www.w3.org/2001/XMLSchema#nonNegativeInteger";
}  // namespace xsd

namespace owl {
inline constexpr std::string_view ns = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view ontology = "http://www.w3.org/2002/07/owl#Ontology";
inline constexpr std::string_view imports = "http://www.w3.org/2002/07/owl#imports";
inline constexpr std::string_view class_ = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view object_property = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr std::string_view datatype_property = "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view annotation_property =
    "http://www.w3.org/2002/07/owl#AnnotationProperty";
inline constexpr std::string_view named_individual = "http://www.w3.org/2002/07/owl#NamedIndividual";
inline constexpr std::string_view thing = "http://www.w3.org/2002/07/owl#Thing";

inline constexpr std::string_view transitive_property =
    "http://www.w3.org/2002/07/owl#TransitiveProperty";
inline constexpr std::string_view symmetric_property = "http://www.w3.org/2002/07/owl#SymmetricProperty";
inline constexpr std::string_view asymmetric_property =
    "http://www.w3.org/2002/07/owl#AsymmetricProperty";
inline constexpr std::string_view reflexive_property = "http://www.w3.org/2002/07/owl#ReflexiveProperty";
inline constexpr std::string_view irreflexive_property =
    "http://www.w3.org/2002/07/owl#IrreflexiveProperty";
inline constexpr std::string_view functional_property =
    "http://www.w3.org/2002/07/owl#FunctionalProperty";
inline constexpr std::string_view inverse_functional_property =
    "http://www.w3.org/2002/07/owl#InverseFunctionalProperty";

inline constexpr std::string_view restriction = "http://www.w3.org/2002/07/owl#Restriction";
inline constexpr std::string_view on_property = "http://www.w3.org/2002/07/owl#onProperty";
inline constexpr std::string_view some_values_from = "http://www.w3.org/2002/07/owl#someValuesFrom";
inline constexpr std::string_view all_values_from = "http://www.w3.org/2002/07/owl#allValuesFrom";
inline constexpr std::string_view has_value = "http://www.w3.org/2002/07/owl#hasValue";
inline constexpr std::string_view min_cardinality = "http://www.w3.org/2002/07/owl#minCardinality";
inline constexpr std::string_view max_cardinality = "http://www.w3.org/2002/07/owl#maxCardinality";
inline constexpr std::string_view cardinality = "http://www.w3.org/2002/07/owl#cardinality";
inline constexpr std::string_view min_qualified_cardinality =
    "http://www.w3.org/2002/07/owl#minQualifiedCardinality";
inline constexpr std::string_view max_qualified_cardinality =
    "http://www.w3.org/2002/07/owl#maxQualifiedCardinality";
inline constexpr std::string_view qualified_cardinality =
    "http://www.w3.org/2002/07/owl#qualifiedCardinality";
inline constexpr std::string_view on_class = "http://www.w3.org/2002/07/owl#onClass";
inline constexpr std::string_view on_data_range = "http://www.w3.org/2002/07/owl#onDataRange";

inline constexpr std::string_view intersection_of = "http://www.w3.org/2002/07/owl#intersectionOf";
inline constexpr std::string_view union_of = "http://www.w3.org/2002/07/owl#unionOf";
inline constexpr std::string_view complement_of = "http://www.w3.org/2002/07/owl#complementOf";
inline constexpr std::string_view one_of = "http://www.w3.org/2002/07/owl#oneOf";
inline constexpr std::string_view inverse_of = "http://www.w3.org/2002/07/owl#inverseOf";

inline constexpr std::string_view equivalent_class = "http://www.w3.org/2002/07/owl#equivalentClass";
inline constexpr std::string_view disjoint_with = "http://www.w3.org/2002/07/owl#disjointWith";
inline constexpr std::string_view all_disjoint_classes =
    "http://www.w3.org/2002/07/owl#AllDisjointClasses";
inline constexpr std::string_view members = "http://www.w3.org/2002/07/owl#members";
inline constexpr std::string_view property_chain_axiom =
    "http://www.w3.org/2002/07/owl#propertyChainAxiom";
inline constexpr std::string_view same_as = "http://www.w3.org/2002/07/owl#sameAs";
inline constexpr std::string_view different_from = "http://www.w3.org/2002/07/owl#differentFrom";
inline constexpr std::string_view deprecated = "http://www.w3.org/2002/07/owl#deprecated";

inline constexpr std::string_view axiom = "http://www.w3.org/2002/07/owl#Axiom";
inline constexpr std::string_view annotated_source = "http://www.w3.org/2002/07/owl#annotatedSource";
inline constexpr std::string_view annotated_property =
    "http://www.w3.org/2002/07/owl#annotatedProperty";
inline constexpr std::string_view annotated_target = "http://www.w3.org/2002/07/owl#annotatedTarget";
}  // namespace owl

namespace obo {
inline constexpr std::string_view ns = "http://purl.obolibrary.org/obo/";
inline constexpr std::string_view definition = "http://purl.obolibrary.org/obo/IAO_0000115";
inline constexpr std::string_view part_of = "http://purl.obolibrary.org/obo/BFO_0000050";
}  // namespace obo

namespace oio {
inline constexpr std::string_view ns = "http://www.geneontology.org/formats/oboInOwl#";
inline constexpr std::string_view has_exact_synonym =
    "http://www.geneontology.org/formats/oboInOwl#hasExactSynonym";
inline constexpr std::string_view has_db_xref = "http://www.geneontology.org/formats/oboInOwl#hasDbXref";
}  // namespace oio

namespace skos {
inline constexpr std::string_view exact_match = "http://www.w3.org/2004/02/skos/core#exactMatch";
inline constexpr std::string_view close_match = "http://www.w3.org/2004/02/skos/core#closeMatch";
}  // namespace skos

}  // namespace ontolookup::vocab
