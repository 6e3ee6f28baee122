#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <variant>

#include "ontolookup/owl/interpret.hpp"
#include "ontolookup/rdf/vocab.hpp"

namespace ontolookup::owl {

namespace v = vocab;

namespace {

using AxiomKind = LogicalAxiom::Kind;

const std::unordered_map<std::string_view, AxiomKind>& structural_kinds() {
  static const std::unordered_map<std::string_view, AxiomKind> kinds{
      {v::rdfs::sub_class_of, AxiomKind::sub_class_of},
      {v::owl::equivalent_class, AxiomKind::equivalent_class},
      {v::owl::disjoint_with, AxiomKind::disjoint_with},
      {v::rdfs::sub_property_of, AxiomKind::sub_property_of},
      {v::owl::property_chain_axiom, AxiomKind::property_chain},
      {v::owl::inverse_of, AxiomKind::inverse_of},
      {v::rdfs::domain, AxiomKind::domain},
      {v::rdfs::range, AxiomKind::range},
      {v::owl::same_as, AxiomKind::same_as},
      {v::owl::different_from, AxiomKind::different_from},
  };
  return kinds;
}

const std::unordered_map<std::string_view, EntityKind>& declaration_kinds() {
  static const std::unordered_map<std::string_view, EntityKind> kinds{
      {v::owl::ontology, EntityKind::ontology},
      {v::owl::object_property, EntityKind::object_property},
      {v::owl::datatype_property, EntityKind::datatype_property},
      {v::owl::annotation_property, EntityKind::annotation_property},
      {v::rdf::property, EntityKind::annotation_property},
      {v::owl::class_, EntityKind::class_},
      {v::rdfs::class_, EntityKind::class_},
      {v::rdfs::datatype, EntityKind::class_},
      {v::owl::named_individual, EntityKind::individual},
  };
  return kinds;
}

const std::unordered_map<std::string_view, Characteristic>& characteristic_types() {
  static const std::unordered_map<std::string_view, Characteristic> kinds{
      {v::owl::transitive_property, Characteristic::transitive},
      {v::owl::symmetric_property, Characteristic::symmetric},
      {v::owl::asymmetric_property, Characteristic::asymmetric},
      {v::owl::reflexive_property, Characteristic::reflexive},
      {v::owl::irreflexive_property, Characteristic::irreflexive},
      {v::owl::functional_property, Characteristic::functional},
      {v::owl::inverse_functional_property, Characteristic::inverse_functional},
  };
  return kinds;
}

void sort_unique(std::vector<std::size_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool is_type(const rdf::Triple& t, std::string_view type_iri) {
  return t.predicate == v::rdf::type && t.object.is_iri() && t.object.value() == type_iri;
}

// Interprets one structural (non rdf:type) triple with an IRI subject.
std::variant<AttributedAxiom, Rejection> interpret_structural(const TripleIndex& index,
                                                              std::size_t position) {
  const auto& t = index.at(position);
  AttributedAxiom out;
  out.subject = t.subject.value();
  out.axiom.kind = structural_kinds().at(t.predicate);
  out.axiom.source_predicate = t.predicate;
  out.axiom.source_object = t.object;
  out.consumed.push_back(position);
  try {
    switch (out.axiom.kind) {
      case AxiomKind::sub_class_of:
      case AxiomKind::equivalent_class:
      case AxiomKind::disjoint_with:
      case AxiomKind::domain:
      case AxiomKind::range:
        out.axiom.expression = resolve_class_expression(t.object, index, &out.consumed);
        break;
      case AxiomKind::sub_property_of:
        out.axiom.property = resolve_property_expression(t.object, index, &out.consumed);
        break;
      case AxiomKind::property_chain: {
        auto items = read_list(t.object, index, &out.consumed);
        if (items.size() < 2) {
          throw ExpressionError(t.object, "property chain needs at least two properties");
        }
        out.axiom.property.kind = PropertyExpression::Kind::chain;
        for (const auto& item : items) {
          out.axiom.property.chain.push_back(resolve_property_expression(item, index, &out.consumed));
        }
        break;
      }
      case AxiomKind::inverse_of:
      case AxiomKind::same_as:
      case AxiomKind::different_from:
        if (!t.object.is_iri()) throw ExpressionError(t.object, "expected a named entity");
        out.axiom.iri = t.object.value();
        break;
      default:
        break;
    }
  } catch (const ExpressionError& e) {
    Rejection r{out.subject, e.what(), index.blank_closure(t.object)};
    r.triples.push_back(position);
    sort_unique(r.triples);
    return r;
  }
  sort_unique(out.consumed);
  out.axiom.source_triple_count = out.consumed.size();
  return out;
}

AxiomBatch interpret_by_predicate(const TripleIndex& index, std::string_view predicate) {
  AxiomBatch batch;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto& t = index.at(i);
    if (t.predicate != predicate || !t.subject.is_iri()) continue;
    auto result = interpret_structural(index, i);
    if (auto* a = std::get_if<AttributedAxiom>(&result)) {
      batch.axioms.push_back(std::move(*a));
    } else {
      batch.rejected.push_back(std::get<Rejection>(std::move(result)));
    }
  }
  return batch;
}

AxiomBatch interpret_all_disjoint_blocks(const TripleIndex& index) {
  AxiomBatch batch;
  std::unordered_set<rdf::Term, rdf::TermHash> seen;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto& block = index.at(i).subject;
    if (!block.is_blank() || !is_type(index.at(i), v::owl::all_disjoint_classes) ||
        !seen.insert(block).second) {
      continue;
    }
    auto closure = index.blank_closure(block);
    try {
      const rdf::Term* members = nullptr;
      for (auto j : index.by_subject(block)) {
        const auto& t = index.at(j);
        if (is_type(t, v::owl::all_disjoint_classes)) continue;
        if (t.predicate == v::owl::members && !members) {
          members = &t.object;
        } else {
          throw ExpressionError(block, "unexpected triple <" + t.predicate + "> in owl:AllDisjointClasses");
        }
      }
      if (!members) throw ExpressionError(block, "owl:AllDisjointClasses without owl:members");
      LogicalAxiom axiom;
      axiom.kind = AxiomKind::all_disjoint_classes;
      std::vector<std::size_t> scratch;
      for (const auto& m : read_list(*members, index, &scratch)) {
        axiom.members.push_back(resolve_class_expression(m, index, &scratch));
      }
      if (axiom.members.size() < 2) throw ExpressionError(block, "fewer than two disjoint classes");
      axiom.source_triple_count = closure.size();
      for (const auto& m : axiom.members) {
        if (!m.is_named()) continue;
        batch.axioms.push_back({m.iri, axiom, closure});
      }
      if (std::none_of(axiom.members.begin(), axiom.members.end(),
                       [](const ClassExpression& c) { return c.is_named(); })) {
        throw ExpressionError(block, "no named member");
      }
    } catch (const ExpressionError& e) {
      batch.rejected.push_back({"", e.what(), closure});
    }
  }
  return batch;
}

}  // namespace

bool is_structural_predicate(std::string_view predicate) {
  return predicate == v::rdf::type || structural_kinds().contains(predicate);
}

AxiomBatch interpret_disjointness(const TripleIndex& index) {
  AxiomBatch batch = interpret_by_predicate(index, v::owl::disjoint_with);
  AxiomBatch blocks = interpret_all_disjoint_blocks(index);
  std::move(blocks.axioms.begin(), blocks.axioms.end(), std::back_inserter(batch.axioms));
  std::move(blocks.rejected.begin(), blocks.rejected.end(), std::back_inserter(batch.rejected));
  return batch;
}

AxiomBatch interpret_property_chain(const TripleIndex& index) {
  return interpret_by_predicate(index, v::owl::property_chain_axiom);
}

ReificationBatch collect_reified(const TripleIndex& index) {
  ReificationBatch batch;
  std::unordered_set<rdf::Term, rdf::TermHash> seen;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto& node = index.at(i).subject;
    if (!node.is_blank() || !is_type(index.at(i), v::owl::axiom) || !seen.insert(node).second) {
      continue;
    }
    auto closure = index.blank_closure(node);
    const rdf::Term* source = nullptr;
    const rdf::Term* property = nullptr;
    const rdf::Term* target = nullptr;
    int duplicates = 0;
    bool type_seen = false;
    ReifiedAnnotation r;
    r.node = node;
    for (auto j : index.by_subject(node)) {
      const auto& t = index.at(j);
      auto take = [&](const rdf::Term*& slot) {
        if (slot) ++duplicates;
        slot = &t.object;
      };
      if (t.predicate == v::owl::annotated_source) {
        take(source);
      } else if (t.predicate == v::owl::annotated_property) {
        take(property);
      } else if (t.predicate == v::owl::annotated_target) {
        take(target);
      } else if (!type_seen && is_type(t, v::owl::axiom)) {
        type_seen = true;
      } else {
        r.payload.push_back({t.predicate, t.object});
      }
    }
    if (!source || !property || !target || duplicates) {
      batch.rejected.push_back({"", "owl:Axiom lacks a single annotatedSource, annotatedProperty and annotatedTarget", closure});
      continue;
    }
    if (!source->is_iri() || !property->is_iri()) {
      batch.rejected.push_back({"", "owl:Axiom source or property is not an IRI", closure});
      continue;
    }
    r.annotated_subject = source->value();
    r.annotated_property = property->value();
    r.annotated_target = *target;
    batch.reified.push_back({std::move(r), std::move(closure)});
  }
  return batch;
}

std::vector<std::string> collect_languages(std::span<const OwlEntity> entities) {
  std::set<std::string> tags;
  for (const auto& e : entities) {
    for (const auto& a : e.annotations) {
      if (a.value.value.is_literal() && !a.value.value.language().empty()) {
        tags.insert(a.value.value.language());
      }
    }
  }
  return {tags.begin(), tags.end()};
}

namespace {

struct EntityBuilder {
  OwlEntity entity;
  std::vector<std::size_t> consumed;
  std::size_t first_position = 0;
};

std::string payload_key(const TripleIndex& index, const ReifiedAnnotation& r) {
  std::vector<std::string> parts;
  for (const auto& p : r.payload) parts.push_back(p.property + "\t" + index.structure_key(p.value));
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& p : parts) key += p + "\n";
  return key;
}

void build_entity(const TripleIndex& index, EntityBuilder& b,
                  std::map<std::size_t, Rejection>& rejections) {
  OwlEntity& e = b.entity;
  rdf::Term subject = rdf::Term::iri(e.iri);
  std::vector<std::pair<std::size_t, EntityKind>> declared;
  std::vector<std::size_t> characteristic_positions;
  bool implies_object_property = false;
  bool functional = false;

  for (auto i : index.by_subject(subject)) {
    const auto& t = index.at(i);
    if (t.predicate == v::rdf::type) {
      if (t.object.is_literal()) {
        rejections.emplace(i, Rejection{e.iri, "literal rdf:type", {i}});
        continue;
      }
      if (t.object.is_iri()) {
        if (auto d = declaration_kinds().find(t.object.value()); d != declaration_kinds().end()) {
          declared.emplace_back(i, d->second);
          continue;
        }
        if (auto c = characteristic_types().find(t.object.value()); c != characteristic_types().end()) {
          characteristic_positions.push_back(i);
          if (c->second == Characteristic::functional) {
            functional = true;
          } else {
            implies_object_property = true;
          }
          LogicalAxiom axiom;
          axiom.kind = AxiomKind::characteristic;
          axiom.characteristic = c->second;
          axiom.source_predicate = t.predicate;
          axiom.source_object = t.object;
          axiom.source_triple_count = 1;
          e.logical_axioms.push_back(std::move(axiom));
          b.consumed.push_back(i);
          continue;
        }
      }
      // Class assertion; named or anonymous.
      LogicalAxiom axiom;
      axiom.kind = AxiomKind::type_assertion;
      axiom.source_predicate = t.predicate;
      axiom.source_object = t.object;
      std::vector<std::size_t> used{i};
      try {
        axiom.expression = resolve_class_expression(t.object, index, &used);
      } catch (const ExpressionError& err) {
        auto closure = index.blank_closure(t.object);
        closure.push_back(i);
        sort_unique(closure);
        rejections.emplace(i, Rejection{e.iri, err.what(), closure});
        continue;
      }
      sort_unique(used);
      axiom.source_triple_count = used.size();
      e.logical_axioms.push_back(std::move(axiom));
      b.consumed.insert(b.consumed.end(), used.begin(), used.end());
      continue;
    }
    if (structural_kinds().contains(t.predicate)) {
      auto result = interpret_structural(index, i);
      if (auto* a = std::get_if<AttributedAxiom>(&result)) {
        b.consumed.insert(b.consumed.end(), a->consumed.begin(), a->consumed.end());
        e.logical_axioms.push_back(std::move(a->axiom));
      } else {
        rejections.emplace(i, std::get<Rejection>(std::move(result)));
      }
      continue;
    }
    e.annotations.push_back({t.predicate, {t.object, {}}});
    b.consumed.push_back(i);
    auto closure = index.blank_closure(t.object);
    b.consumed.insert(b.consumed.end(), closure.begin(), closure.end());
  }

  // Kind by precedence; the enum order is the precedence order.
  std::set<EntityKind> candidates;
  for (auto& [pos, kind] : declared) candidates.insert(kind);
  bool property_declared = candidates.contains(EntityKind::object_property) ||
                           candidates.contains(EntityKind::datatype_property) ||
                           candidates.contains(EntityKind::annotation_property);
  if (implies_object_property || (functional && !property_declared)) {
    candidates.insert(EntityKind::object_property);
  }
  bool has_assertion = std::any_of(e.logical_axioms.begin(), e.logical_axioms.end(),
                                   [](const LogicalAxiom& a) { return a.kind == AxiomKind::type_assertion; });
  if (!candidates.empty()) {
    e.kind = *candidates.begin();
  } else {
    e.kind = has_assertion ? EntityKind::individual : EntityKind::class_;
  }
  for (auto& [pos, kind] : declared) {
    const auto& t = index.at(pos);
    if (kind == e.kind) {
      e.declarations.push_back(t.object.value());
    } else {
      // Punned or conflicting declaration kept as a plain annotation.
      e.annotations.push_back({t.predicate, {t.object, {}}});
    }
    b.consumed.push_back(pos);
  }
}

// Finds a direct assertion on `e` that a reification points at.
bool attach(const TripleIndex& index, OwlEntity& e, ReifiedAnnotation& r, ReifiedIndex slot) {
  const rdf::Term& target = r.annotated_target;
  std::string target_key;
  auto matches = [&](const rdf::Term& value) {
    if (value == target) {
      r.shared_target = target.is_blank();
      return true;
    }
    if (!value.is_blank() || !target.is_blank()) return false;
    if (target_key.empty()) target_key = index.structure_key(target);
    return index.structure_key(value) == target_key;
  };
  for (std::size_t k = 0; k < e.annotations.size(); ++k) {
    auto& a = e.annotations[k];
    if (a.property == r.annotated_property && matches(a.value.value)) {
      r.attachment = ReifiedAnnotation::Attachment::annotation;
      r.attached_index = k;
      a.value.reified.push_back(slot);
      return true;
    }
  }
  for (std::size_t k = 0; k < e.logical_axioms.size(); ++k) {
    auto& a = e.logical_axioms[k];
    if (a.source_predicate == r.annotated_property && matches(a.source_object)) {
      r.attachment = ReifiedAnnotation::Attachment::axiom;
      r.attached_index = k;
      a.reified.push_back(slot);
      return true;
    }
  }
  return false;
}

void order_reified(const TripleIndex& index, OwlEntity& e) {
  if (e.reified.empty()) return;
  std::vector<std::string> keys;
  for (const auto& r : e.reified) {
    keys.push_back(r.annotated_property + "\n" + index.structure_key(r.annotated_target) + "\n" +
                   payload_key(index, r) + (r.shared_target ? "s" : "c"));
  }
  std::vector<std::size_t> order(e.reified.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return keys[a] < keys[b]; });
  std::vector<std::size_t> new_slot(order.size());
  std::vector<ReifiedAnnotation> sorted;
  for (std::size_t k = 0; k < order.size(); ++k) {
    new_slot[order[k]] = k;
    sorted.push_back(std::move(e.reified[order[k]]));
  }
  e.reified = std::move(sorted);
  auto remap = [&](std::vector<ReifiedIndex>& slots) {
    for (auto& s : slots) s = new_slot[s];
    std::sort(slots.begin(), slots.end());
  };
  for (auto& a : e.annotations) remap(a.value.reified);
  for (auto& a : e.logical_axioms) remap(a.reified);
}

}  // namespace

AssembledOntology assemble(std::vector<rdf::Triple> triples) {
  TripleIndex index(std::move(triples));
  AssembledOntology out;
  out.input_triples = index.size();

  std::map<std::size_t, Rejection> rejections;  // keyed by first position
  std::unordered_map<std::string, EntityBuilder> builders;
  std::vector<std::string> subject_order;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto& s = index.at(i).subject;
    if (!s.is_iri() || builders.contains(s.value())) continue;
    EntityBuilder b;
    b.entity.iri = s.value();
    b.first_position = i;
    builders.emplace(s.value(), std::move(b));
    subject_order.push_back(s.value());
  }
  for (auto& iri : subject_order) build_entity(index, builders.at(iri), rejections);

  auto record_rejection = [&](Rejection r) {
    if (r.triples.empty()) return;
    auto first = r.triples.front();
    rejections.emplace(first, std::move(r));
  };

  // Subject-less blocks.
  AxiomBatch blocks = interpret_all_disjoint_blocks(index);
  std::set<std::vector<std::size_t>> attached_blocks;
  for (auto& a : blocks.axioms) {
    auto it = builders.find(a.subject);
    if (it == builders.end()) continue;
    attached_blocks.insert(a.consumed);
    it->second.entity.logical_axioms.push_back(std::move(a.axiom));
    auto& c = it->second.consumed;
    c.insert(c.end(), a.consumed.begin(), a.consumed.end());
  }
  for (auto& r : blocks.rejected) record_rejection(std::move(r));
  for (auto& a : blocks.axioms) {
    if (!attached_blocks.contains(a.consumed)) {
      record_rejection({"", "no owl:AllDisjointClasses member is an entity", a.consumed});
    }
  }

  auto reified = collect_reified(index);
  for (auto& r : reified.rejected) record_rejection(std::move(r));
  for (auto& c : reified.reified) {
    auto it = builders.find(c.annotation.annotated_subject);
    if (it == builders.end()) {
      record_rejection({c.annotation.annotated_subject, "owl:Axiom source is not an entity", c.consumed});
      continue;
    }
    OwlEntity& e = it->second.entity;
    ReifiedIndex slot = e.reified.size();
    attach(index, e, c.annotation, slot);
    e.reified.push_back(std::move(c.annotation));
    auto& consumed = it->second.consumed;
    consumed.insert(consumed.end(), c.consumed.begin(), c.consumed.end());
  }

  // Referenced superclasses and existential fillers that are never subjects.
  std::set<std::string> stubs;
  for (auto& [iri, b] : builders) {
    for (const auto& a : b.entity.logical_axioms) {
      if (a.kind != AxiomKind::sub_class_of) continue;
      const ClassExpression& x = a.expression;
      if (x.is_named()) {
        stubs.insert(x.iri);
      } else if (x.kind == ClassExpression::Kind::some_values_from && !x.operands.empty() &&
                 x.operands[0].is_named()) {
        stubs.insert(x.operands[0].iri);
      }
    }
  }

  std::vector<bool> used(index.size(), false);
  for (auto& iri : subject_order) {
    EntityBuilder& b = builders.at(iri);
    sort_unique(b.consumed);
    for (auto i : b.consumed) {
      used[i] = true;
      b.entity.consumed.push_back(index.at(i));
    }
    order_reified(index, b.entity);
  }

  // Header: the first ontology-kind subject in stream order.
  for (auto& iri : subject_order) {
    EntityBuilder& b = builders.at(iri);
    if (!out.header && b.entity.kind == EntityKind::ontology) {
      out.header = std::move(b.entity);
      continue;
    }
    out.entities.push_back(std::move(b.entity));
  }
  for (const auto& iri : stubs) {
    if (builders.contains(iri)) continue;
    OwlEntity stub;
    stub.iri = iri;
    stub.kind = EntityKind::class_;
    stub.stub = true;
    out.entities.push_back(std::move(stub));
  }
  std::sort(out.entities.begin(), out.entities.end(),
            [](const OwlEntity& a, const OwlEntity& b) { return a.iri < b.iri; });

  std::unordered_map<std::size_t, const Rejection*> reason_of;
  for (const auto& [first, r] : rejections) {
    for (auto i : r.triples) reason_of.emplace(i, &r);
  }
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (used[i]) continue;
    DanglingTriple d{index.at(i), "not attributable to any entity", {}};
    if (auto it = reason_of.find(i); it != reason_of.end()) {
      d.reason = it->second->reason;
      d.entity = it->second->subject;
    }
    out.dangling.push_back(std::move(d));
  }
  return out;
}

}  // namespace ontolookup::owl
