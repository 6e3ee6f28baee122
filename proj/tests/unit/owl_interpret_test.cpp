#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ontolookup/owl/interpret.hpp"
#include "ontolookup/rdf/ntriples_writer.hpp"
#include "ontolookup/rdf/parser.hpp"
#include "ontolookup/rdf/vocab.hpp"
#include "random_ontology.hpp"
#include "rdf_printers.hpp"

using namespace ontolookup;
using owl::ClassExpression;
using owl::EntityKind;
using owl::LogicalAxiom;
using owl::PropertyExpression;
using rdf::Term;

namespace {

const char* kPrefixes = R"(@prefix : <http://x/> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix obo: <http://purl.obolibrary.org/obo/> .
@prefix oio: <http://www.geneontology.org/formats/oboInOwl#> .
)";

std::vector<rdf::Triple> ttl(const std::string& body) {
  return rdf::parse(std::string(kPrefixes) + body, rdf::Format::turtle, {.blank_prefix = "b"});
}

owl::AssembledOntology assemble(const std::string& body) { return owl::assemble(ttl(body)); }

std::string x(std::string_view local) { return "http://x/" + std::string(local); }

std::vector<const LogicalAxiom*> axioms_of(const owl::OwlEntity& e, LogicalAxiom::Kind kind) {
  std::vector<const LogicalAxiom*> out;
  for (const auto& a : e.logical_axioms) {
    if (a.kind == kind) out.push_back(&a);
  }
  return out;
}

Term find_subject_with(const std::vector<rdf::Triple>& ts, std::string_view predicate) {
  for (const auto& t : ts) {
    if (t.predicate == predicate) return t.subject;
  }
  return {};
}

}  // namespace

TEST(Assemble, MinimalDeclaration) {
  auto o = assemble(":a rdf:type owl:Class .");
  ASSERT_EQ(o.entities.size(), 1u);
  EXPECT_EQ(o.entities[0].iri, x("a"));
  EXPECT_EQ(o.entities[0].kind, EntityKind::class_);
  EXPECT_TRUE(o.dangling.empty());
  EXPECT_FALSE(o.header.has_value());
}

TEST(Assemble, RdfsClassHierarchy) {
  auto o = assemble(":Person rdf:type rdfs:Class . :Student rdfs:subClassOf :Person .");
  ASSERT_EQ(o.entities.size(), 2u);
  const auto* student = o.find(x("Student"));
  ASSERT_NE(student, nullptr);
  EXPECT_EQ(student->kind, EntityKind::class_);
  EXPECT_EQ(o.find(x("Person"))->kind, EntityKind::class_);
  auto subs = axioms_of(*student, LogicalAxiom::Kind::sub_class_of);
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_EQ(subs[0]->expression, ClassExpression::named_class(x("Person")));
  EXPECT_TRUE(o.dangling.empty());
}

TEST(Assemble, UntypedSubjectBecomesClassStubHoldingAnnotation) {
  auto o = assemble(":x :p \"v\" .");
  ASSERT_EQ(o.entities.size(), 1u);
  EXPECT_EQ(o.entities[0].kind, EntityKind::class_);
  ASSERT_EQ(o.entities[0].annotations.size(), 1u);
  EXPECT_EQ(o.entities[0].annotations[0].property, x("p"));
  EXPECT_EQ(o.entities[0].annotations[0].value.value, Term::literal("v"));
}

TEST(Assemble, ReferencedSuperclassBecomesStub) {
  auto o = assemble(":a rdfs:subClassOf :b , [ a owl:Restriction ; owl:onProperty obo:BFO_0000050 ; owl:someValuesFrom :c ] .");
  ASSERT_EQ(o.entities.size(), 3u);
  EXPECT_FALSE(o.find(x("a"))->stub);
  EXPECT_TRUE(o.find(x("b"))->stub);
  EXPECT_TRUE(o.find(x("c"))->stub);
  EXPECT_TRUE(o.find(x("b"))->consumed.empty());
}

TEST(Assemble, KindPrecedenceAndPunning) {
  auto o = assemble(R"(
:p a owl:Class , owl:ObjectProperty .
:q a owl:FunctionalProperty .
:r a owl:FunctionalProperty , owl:DatatypeProperty .
:s a owl:TransitiveProperty .
:i a :Person .
:j a owl:NamedIndividual , owl:Class .
:o a owl:Ontology ; owl:imports <http://y/> .
:o2 a owl:Ontology .
:rp a rdf:Property .)");
  EXPECT_EQ(o.find(x("p"))->kind, EntityKind::object_property);
  EXPECT_EQ(o.find(x("q"))->kind, EntityKind::object_property);
  EXPECT_EQ(o.find(x("r"))->kind, EntityKind::datatype_property);
  EXPECT_EQ(o.find(x("s"))->kind, EntityKind::object_property);
  EXPECT_EQ(o.find(x("i"))->kind, EntityKind::individual);
  EXPECT_EQ(o.find(x("j"))->kind, EntityKind::class_);
  EXPECT_EQ(o.find(x("rp"))->kind, EntityKind::annotation_property);
  ASSERT_TRUE(o.header.has_value());
  EXPECT_EQ(o.header->iri, x("o"));
  EXPECT_EQ(o.find(x("o2"))->kind, EntityKind::ontology);

  // The losing declaration survives as a plain rdf:type annotation.
  auto punned = o.find(x("p"))->annotation_values(vocab::rdf::type);
  ASSERT_EQ(punned.size(), 1u);
  EXPECT_EQ(punned[0]->value, Term::iri(std::string(vocab::owl::class_)));
  auto type_assertions = axioms_of(*o.find(x("i")), LogicalAxiom::Kind::type_assertion);
  ASSERT_EQ(type_assertions.size(), 1u);
  EXPECT_EQ(type_assertions[0]->expression, ClassExpression::named_class(x("Person")));
  EXPECT_EQ(axioms_of(*o.find(x("s")), LogicalAxiom::Kind::characteristic).size(), 1u);
  EXPECT_TRUE(o.dangling.empty());
}

TEST(ResolveClassExpression, NamedIri) {
  owl::TripleIndex index({});
  EXPECT_EQ(owl::resolve_class_expression(Term::iri(x("Lung")), index),
            ClassExpression::named_class(x("Lung")));
}

TEST(ResolveClassExpression, ExistentialRestriction) {
  auto ts = ttl(":s rdfs:subClassOf [ a owl:Restriction ; owl:onProperty obo:BFO_0000050 ; owl:someValuesFrom :Lung ] .");
  owl::TripleIndex index(ts);
  std::vector<std::size_t> consumed;
  auto node = find_subject_with(ts, std::string(vocab::owl::on_property));
  auto expr = owl::resolve_class_expression(node, index, &consumed);

  ClassExpression expected;
  expected.kind = ClassExpression::Kind::some_values_from;
  expected.property = PropertyExpression::named_property(std::string(vocab::obo::part_of));
  expected.operands.push_back(ClassExpression::named_class(x("Lung")));
  EXPECT_EQ(expr, expected);
  EXPECT_EQ(consumed.size(), 3u);
}

TEST(ResolveClassExpression, IntersectionWithNestedRestriction) {
  auto ts = ttl(":s owl:equivalentClass [ owl:intersectionOf ( :A [ owl:onProperty :p ; owl:someValuesFrom :B ] ) ] .");
  owl::TripleIndex index(ts);
  auto node = find_subject_with(ts, std::string(vocab::owl::intersection_of));
  std::vector<std::size_t> consumed;
  auto expr = owl::resolve_class_expression(node, index, &consumed);

  ClassExpression some;
  some.kind = ClassExpression::Kind::some_values_from;
  some.property = PropertyExpression::named_property(x("p"));
  some.operands.push_back(ClassExpression::named_class(x("B")));
  ClassExpression expected;
  expected.kind = ClassExpression::Kind::intersection;
  expected.operands = {ClassExpression::named_class(x("A")), some};
  EXPECT_EQ(expr, expected);
  // intersectionOf + 2 list cells of 2 triples + 2 restriction triples.
  std::sort(consumed.begin(), consumed.end());
  EXPECT_EQ(consumed.size(), 7u);
  EXPECT_EQ(consumed, index.blank_closure(node));
}

TEST(ResolveClassExpression, CardinalityHasValueComplementOneOfInverse) {
  auto ts = ttl(R"(
:c1 rdfs:subClassOf [ owl:onProperty [ owl:inverseOf :p ] ; owl:minQualifiedCardinality "2"^^xsd:nonNegativeInteger ; owl:onClass :B ] .
:c2 rdfs:subClassOf [ owl:onProperty :p ; owl:hasValue :ind ] .
:c3 rdfs:subClassOf [ owl:complementOf [ owl:oneOf ( :i1 :i2 ) ] ] .
:c4 rdfs:subClassOf [ owl:onProperty :p ; owl:cardinality "1" ] .)");
  auto o = owl::assemble(ts);
  EXPECT_TRUE(o.dangling.empty());
  const auto& c1 = axioms_of(*o.find(x("c1")), LogicalAxiom::Kind::sub_class_of)[0]->expression;
  EXPECT_EQ(c1.kind, ClassExpression::Kind::cardinality);
  EXPECT_EQ(c1.cardinality_kind, owl::CardinalityKind::min);
  EXPECT_EQ(c1.cardinality, 2u);
  EXPECT_EQ(c1.property, PropertyExpression::inverse(x("p")));
  ASSERT_EQ(c1.operands.size(), 1u);
  const auto& c2 = axioms_of(*o.find(x("c2")), LogicalAxiom::Kind::sub_class_of)[0]->expression;
  EXPECT_EQ(c2.kind, ClassExpression::Kind::has_value);
  EXPECT_EQ(c2.values, std::vector<Term>{Term::iri(x("ind"))});
  const auto& c3 = axioms_of(*o.find(x("c3")), LogicalAxiom::Kind::sub_class_of)[0]->expression;
  ASSERT_EQ(c3.kind, ClassExpression::Kind::complement);
  EXPECT_EQ(c3.operands[0].kind, ClassExpression::Kind::one_of);
  EXPECT_EQ(c3.operands[0].values.size(), 2u);
  const auto& c4 = axioms_of(*o.find(x("c4")), LogicalAxiom::Kind::sub_class_of)[0]->expression;
  EXPECT_EQ(c4.cardinality_kind, owl::CardinalityKind::exact);
  EXPECT_TRUE(c4.operands.empty());
}

TEST(ResolveClassExpression, MalformedExpressionsGoToDangling) {
  auto o = assemble(R"(
:a rdfs:subClassOf [ a owl:Restriction ; owl:someValuesFrom :b ] .
:c rdfs:subClassOf _:loop .
_:loop owl:complementOf _:loop .
:d rdfs:subClassOf :e .)");
  // 1 + 2 (missing onProperty) and 1 + 1 (cycle) triples.
  EXPECT_EQ(o.dangling.size(), 5u);
  for (const auto& d : o.dangling) {
    EXPECT_FALSE(d.entity.empty()) << d.reason;
  }
  EXPECT_TRUE(axioms_of(*o.find(x("a")), LogicalAxiom::Kind::sub_class_of).empty());
  EXPECT_EQ(axioms_of(*o.find(x("d")), LogicalAxiom::Kind::sub_class_of).size(), 1u);
  auto ts = ttl(":c rdfs:subClassOf _:loop . _:loop owl:complementOf _:loop .");
  owl::TripleIndex index(ts);
  EXPECT_THROW(owl::resolve_class_expression(Term::blank("bloop"), index), owl::ExpressionError);
}

TEST(Disjointness, PairwiseDisjointWith) {
  auto o = assemble(R"(
obo:MONDO_0000368 a owl:Class ; rdfs:label "extrapulmonary tuberculosis" ;
  owl:disjointWith obo:MONDO_0006052 .
obo:MONDO_0006052 a owl:Class ; rdfs:label "pulmonary tuberculosis" .)");
  const auto* e = o.find("http://purl.obolibrary.org/obo/MONDO_0000368");
  ASSERT_NE(e, nullptr);
  auto dis = axioms_of(*e, LogicalAxiom::Kind::disjoint_with);
  ASSERT_EQ(dis.size(), 1u);
  EXPECT_EQ(dis[0]->expression, ClassExpression::named_class("http://purl.obolibrary.org/obo/MONDO_0006052"));
  EXPECT_TRUE(axioms_of(*o.find("http://purl.obolibrary.org/obo/MONDO_0006052"),
                        LogicalAxiom::Kind::disjoint_with).empty());

  owl::TripleIndex index(ttl("obo:MONDO_0000368 owl:disjointWith obo:MONDO_0006052 ."));
  auto batch = owl::interpret_disjointness(index);
  ASSERT_EQ(batch.axioms.size(), 1u);
  EXPECT_EQ(batch.axioms[0].subject, "http://purl.obolibrary.org/obo/MONDO_0000368");
}

TEST(Disjointness, AllDisjointClassesAttachesToEveryMember) {
  auto o = assemble(R"(
:a a owl:Class . :b a owl:Class . :c a owl:Class .
[] a owl:AllDisjointClasses ; owl:members ( :a :b :c ) .)");
  EXPECT_TRUE(o.dangling.empty());
  std::vector<ClassExpression> expected{ClassExpression::named_class(x("a")),
                                        ClassExpression::named_class(x("b")),
                                        ClassExpression::named_class(x("c"))};
  for (auto name : {"a", "b", "c"}) {
    auto all = axioms_of(*o.find(x(name)), LogicalAxiom::Kind::all_disjoint_classes);
    ASSERT_EQ(all.size(), 1u) << name;
    EXPECT_EQ(all[0]->members, expected);
    // Declaration + type + members + 3 list cells of 2.
    EXPECT_EQ(o.find(x(name))->consumed.size(), 9u);
  }
}

TEST(Disjointness, NoDisjointnessTriplesYieldNoAxioms) {
  owl::TripleIndex index(ttl(":a a owl:Class ; rdfs:subClassOf :b ."));
  auto batch = owl::interpret_disjointness(index);
  EXPECT_TRUE(batch.axioms.empty());
  EXPECT_TRUE(batch.rejected.empty());
}

TEST(PropertyChain, RegulatesChain) {
  auto o = assemble(R"(
obo:RO_0002211 a owl:ObjectProperty ; rdfs:label "regulates" ;
  owl:propertyChainAxiom ( obo:RO_0002578 obo:RO_0002578 ) .
obo:RO_0002578 a owl:ObjectProperty ; rdfs:label "directly regulates" .)");
  auto chains = axioms_of(*o.find("http://purl.obolibrary.org/obo/RO_0002211"),
                          LogicalAxiom::Kind::property_chain);
  ASSERT_EQ(chains.size(), 1u);
  const auto& chain = chains[0]->property;
  EXPECT_EQ(chain.kind, PropertyExpression::Kind::chain);
  ASSERT_EQ(chain.chain.size(), 2u);
  EXPECT_EQ(chain.chain[0], PropertyExpression::named_property("http://purl.obolibrary.org/obo/RO_0002578"));
  EXPECT_EQ(chain.chain[0], chain.chain[1]);
  EXPECT_EQ(chains[0]->source_triple_count, 5u);
}

TEST(PropertyChain, ListOrderIsPreservedAndReversible) {
  auto walk_oracle = [](const std::vector<rdf::Triple>& ts) {
    // Independent rdf:first/rest walk.
    std::map<Term, Term> first, rest;
    Term head;
    for (const auto& t : ts) {
      if (t.predicate == vocab::rdf::first) first[t.subject] = t.object;
      if (t.predicate == vocab::rdf::rest) rest[t.subject] = t.object;
      if (t.predicate == vocab::owl::property_chain_axiom) head = t.object;
    }
    std::vector<std::string> order;
    while (first.contains(head)) {
      order.push_back(first[head].value());
      head = rest[head];
    }
    return order;
  };
  for (const char* list : {"( :p :q :r )", "( :r :q :p )", "( :a :b :c :d :e )"}) {
    auto ts = ttl(std::string(":s owl:propertyChainAxiom ") + list + " .");
    owl::TripleIndex index(ts);
    auto batch = owl::interpret_property_chain(index);
    ASSERT_EQ(batch.axioms.size(), 1u);
    std::vector<std::string> got;
    for (const auto& p : batch.axioms[0].axiom.property.chain) got.push_back(p.iri);
    EXPECT_EQ(got, walk_oracle(ts)) << list;
  }
  auto forward = owl::interpret_property_chain(owl::TripleIndex(ttl(":s owl:propertyChainAxiom ( :p :q :r ) .")));
  auto backward = owl::interpret_property_chain(owl::TripleIndex(ttl(":s owl:propertyChainAxiom ( :r :q :p ) .")));
  auto f = forward.axioms[0].axiom.property.chain;
  auto b = backward.axioms[0].axiom.property.chain;
  std::reverse(b.begin(), b.end());
  EXPECT_EQ(f, b);
}

TEST(PropertyChain, SingleElementChainIsDangling) {
  auto o = assemble(":s a owl:ObjectProperty ; owl:propertyChainAxiom ( :p ) .");
  EXPECT_TRUE(axioms_of(*o.find(x("s")), LogicalAxiom::Kind::property_chain).empty());
  EXPECT_EQ(o.dangling.size(), 3u);
  owl::TripleIndex index(ttl(":s owl:propertyChainAxiom ( :p ) ."));
  auto batch = owl::interpret_property_chain(index);
  EXPECT_TRUE(batch.axioms.empty());
  ASSERT_EQ(batch.rejected.size(), 1u);
  EXPECT_EQ(batch.rejected[0].triples.size(), 3u);
}

namespace {

const char* kLung = R"(
obo:UBERON_0002048 a owl:Class ;
  rdfs:label "lung"@en , "Lunge"@de , "poumon"@fr ;
  obo:UBERON_homology_notes "Lungs are homologous across tetrapods."@en .
[] a owl:Axiom ;
  owl:annotatedSource obo:UBERON_0002048 ;
  owl:annotatedProperty obo:UBERON_homology_notes ;
  owl:annotatedTarget "Lungs are homologous across tetrapods."@en ;
  oio:hasDbXref "ISBN:0199566682" .
)";

}  // namespace

TEST(Reification, HomologyNoteCarriesXrefPayload) {
  auto o = assemble(kLung);
  EXPECT_TRUE(o.dangling.empty());
  const auto* lung = o.find("http://purl.obolibrary.org/obo/UBERON_0002048");
  ASSERT_NE(lung, nullptr);
  ASSERT_EQ(lung->reified.size(), 1u);
  const auto& r = lung->reified[0];
  EXPECT_EQ(r.annotated_property, "http://purl.obolibrary.org/obo/UBERON_homology_notes");
  ASSERT_EQ(r.payload.size(), 1u);
  EXPECT_EQ(r.payload[0].property, vocab::oio::has_db_xref);
  EXPECT_EQ(r.payload[0].value, Term::literal("ISBN:0199566682"));
  EXPECT_EQ(r.attachment, owl::ReifiedAnnotation::Attachment::annotation);
  auto notes = lung->annotation_values("http://purl.obolibrary.org/obo/UBERON_homology_notes");
  ASSERT_EQ(notes.size(), 1u);
  EXPECT_EQ(notes[0]->reified, std::vector<std::size_t>{0});
  // 5 direct triples + 5 in the axiom block.
  EXPECT_EQ(lung->consumed.size(), 10u);
}

TEST(Reification, ZeroAxiomNodes) {
  owl::TripleIndex index(ttl(":a rdfs:label \"x\" ."));
  auto batch = owl::collect_reified(index);
  EXPECT_TRUE(batch.reified.empty());
  EXPECT_TRUE(batch.rejected.empty());
}

TEST(Reification, TwoReificationsOrderedByPayload) {
  auto o = assemble(R"(
:a a owl:Class ; rdfs:label "A" .
[] a owl:Axiom ; owl:annotatedSource :a ; owl:annotatedProperty rdfs:label ; owl:annotatedTarget "A" ; oio:hasDbXref "Z:2" .
[] a owl:Axiom ; owl:annotatedSource :a ; owl:annotatedProperty rdfs:label ; owl:annotatedTarget "A" ; oio:hasDbXref "B:1" .)");
  const auto* a = o.find(x("a"));
  ASSERT_EQ(a->reified.size(), 2u);
  // Enumerate the axiom nodes by brute force and order their payload text.
  std::vector<std::string> oracle;
  for (const auto& t : ttl(R"([] oio:hasDbXref "Z:2" . [] oio:hasDbXref "B:1" .)")) {
    oracle.push_back(rdf::to_ntriples(t.object));
  }
  std::sort(oracle.begin(), oracle.end());
  EXPECT_EQ(rdf::to_ntriples(a->reified[0].payload[0].value), oracle[0]);
  EXPECT_EQ(rdf::to_ntriples(a->reified[1].payload[0].value), oracle[1]);
  auto labels = a->annotation_values(vocab::rdfs::label);
  EXPECT_EQ(labels[0]->reified, (std::vector<std::size_t>{0, 1}));
}

TEST(Reification, IncompleteOrOrphanBlocks) {
  auto o = assemble(R"(
:a a owl:Class ; rdfs:label "A" .
[] a owl:Axiom ; owl:annotatedSource :a ; owl:annotatedProperty rdfs:label ; oio:hasDbXref "X:1" .
[] a owl:Axiom ; owl:annotatedSource :a ; owl:annotatedProperty rdfs:label ; owl:annotatedTarget "gone" ; oio:hasDbXref "Y:1" .
[] a owl:Axiom ; owl:annotatedSource :nobody ; owl:annotatedProperty rdfs:label ; owl:annotatedTarget "n" .)");
  const auto* a = o.find(x("a"));
  ASSERT_EQ(a->reified.size(), 1u);
  EXPECT_EQ(a->reified[0].attachment, owl::ReifiedAnnotation::Attachment::standalone);
  EXPECT_EQ(o.dangling.size(), 8u);
}

TEST(Reification, AttachesToAxiomsWithCopiedOrSharedTargets) {
  auto o = assemble(R"(
:a rdfs:subClassOf :b , _:r .
_:r owl:onProperty :p ; owl:someValuesFrom :c .
[] a owl:Axiom ; owl:annotatedSource :a ; owl:annotatedProperty rdfs:subClassOf ; owl:annotatedTarget :b ; rdfs:comment "named" .
[] a owl:Axiom ; owl:annotatedSource :a ; owl:annotatedProperty rdfs:subClassOf ;
   owl:annotatedTarget [ owl:onProperty :p ; owl:someValuesFrom :c ] ; rdfs:comment "copy" .
[] a owl:Axiom ; owl:annotatedSource :a ; owl:annotatedProperty rdfs:subClassOf ; owl:annotatedTarget _:r ; rdfs:comment "shared" .)");
  EXPECT_TRUE(o.dangling.empty());
  const auto* a = o.find(x("a"));
  ASSERT_EQ(a->reified.size(), 3u);
  int shared = 0;
  for (const auto& r : a->reified) {
    EXPECT_EQ(r.attachment, owl::ReifiedAnnotation::Attachment::axiom);
    const auto& target_axiom = a->logical_axioms[r.attached_index];
    EXPECT_EQ(target_axiom.source_predicate, vocab::rdfs::sub_class_of);
    shared += r.shared_target;
  }
  EXPECT_EQ(shared, 1);
}

TEST(Languages, CollectsNormalizedSortedTags) {
  auto o = assemble(kLung);
  EXPECT_EQ(owl::collect_languages(o.entities), (std::vector<std::string>{"de", "en", "fr"}));
  auto none = assemble(":a rdfs:label \"plain\" .");
  EXPECT_TRUE(owl::collect_languages(none.entities).empty());
  auto mixed = assemble(":a rdfs:label \"x\"@EN , \"y\"@en .");
  EXPECT_EQ(owl::collect_languages(mixed.entities), std::vector<std::string>{"en"});
}


TEST(AssembleProperties, AccountingAndSubjectGroupingOracle) {
  std::mt19937 rng(2024);
  for (int round = 0; round < 200; ++round) {
    std::string doc = random_document(rng);
    auto triples = ttl(doc);
    auto o = owl::assemble(triples);

    // Multiset union of consumed triples (max multiplicity across entities,
    // since shared blank structure is consumed by each referrer) plus
    // dangling equals the input multiset.
    auto all = o.entities;
    if (o.header) all.push_back(*o.header);
    std::map<rdf::Triple, std::size_t> union_count;
    for (const auto& e : all) {
      std::map<rdf::Triple, std::size_t> mine;
      for (const auto& t : e.consumed) ++mine[t];
      for (const auto& [t, n] : mine) union_count[t] = std::max(union_count[t], n);
    }
    std::map<rdf::Triple, std::size_t> accounted = union_count;
    for (const auto& d : o.dangling) ++accounted[d.triple];
    std::map<rdf::Triple, std::size_t> input;
    for (const auto& t : triples) ++input[t];
    ASSERT_EQ(accounted, input) << doc;
    for (const auto& d : o.dangling) {
      ASSERT_FALSE(union_count.contains(d.triple)) << doc;
    }

    // Oracle: group raw triples by IRI subject.
    std::map<std::string, std::size_t> annotation_count;
    for (const auto& t : triples) {
      if (!t.subject.is_iri()) continue;
      auto& n = annotation_count[t.subject.value()];
      if (!owl::is_structural_predicate(t.predicate)) ++n;
    }
    std::size_t non_stub = 0;
    for (const auto& e : all) {
      ASSERT_FALSE(e.iri.starts_with("b")) << "blank node became an entity";
      if (e.stub) {
        ASSERT_FALSE(annotation_count.contains(e.iri));
        continue;
      }
      ++non_stub;
      ASSERT_TRUE(annotation_count.contains(e.iri)) << e.iri;
      std::size_t n = 0;
      for (const auto& a : e.annotations) n += a.property != vocab::rdf::type;
      ASSERT_EQ(n, annotation_count[e.iri]) << e.iri << "\n" << doc;
    }
    ASSERT_EQ(non_stub, annotation_count.size());

    // Attached reifications point at an existing assertion.
    for (const auto& e : all) {
      for (std::size_t k = 0; k < e.reified.size(); ++k) {
        const auto& r = e.reified[k];
        ASSERT_EQ(r.annotated_subject, e.iri);
        if (r.attachment == owl::ReifiedAnnotation::Attachment::annotation) {
          const auto& a = e.annotations.at(r.attached_index);
          ASSERT_EQ(a.property, r.annotated_property);
          ASSERT_TRUE(std::count(a.value.reified.begin(), a.value.reified.end(), k));
        } else if (r.attachment == owl::ReifiedAnnotation::Attachment::axiom) {
          const auto& a = e.logical_axioms.at(r.attached_index);
          ASSERT_EQ(a.source_predicate, r.annotated_property);
        }
      }
    }
  }
}

TEST(AssembleProperties, BlankNodesAreConsumedWholeOrNotAtAll) {
  std::mt19937 rng(99);
  for (int round = 0; round < 200; ++round) {
    std::string doc = random_document(rng);
    auto triples = ttl(doc);
    auto o = owl::assemble(triples);
    std::set<rdf::Triple> consumed;
    for (const auto& e : o.entities) consumed.insert(e.consumed.begin(), e.consumed.end());
    std::map<Term, std::pair<int, int>> per_blank;  // consumed, dangling
    for (const auto& t : triples) {
      if (!t.subject.is_blank()) continue;
      auto& [c, d] = per_blank[t.subject];
      (consumed.contains(t) ? c : d)++;
    }
    for (const auto& [node, counts] : per_blank) {
      ASSERT_TRUE(counts.first == 0 || counts.second == 0) << node.value() << "\n" << doc;
    }
  }
}
