#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "ontolookup/owl/interpret.hpp"
#include "ontolookup/rdf/ntriples_writer.hpp"
#include "ontolookup/rdf/vocab.hpp"

namespace ontolookup::owl {

namespace v = vocab;

ExpressionError::ExpressionError(const rdf::Term& node, const std::string& message)
    : std::runtime_error(message + " at " + rdf::to_ntriples(node)), node_(node) {}

namespace {

using Visiting = std::unordered_set<rdf::Term, rdf::TermHash>;

void note(std::vector<std::size_t>* consumed, std::size_t i) {
  if (consumed) consumed->push_back(i);
}

std::vector<rdf::Term> read_list_impl(const rdf::Term& head, const TripleIndex& index,
                                      std::vector<std::size_t>* consumed) {
  std::vector<rdf::Term> items;
  Visiting seen;
  rdf::Term node = head;
  while (!(node.is_iri() && node.value() == v::rdf::nil)) {
    if (!node.is_blank()) throw ExpressionError(node, "list node is not a blank node");
    if (!seen.insert(node).second) throw ExpressionError(node, "cyclic list");
    const rdf::Term* first = nullptr;
    const rdf::Term* rest = nullptr;
    for (auto i : index.by_subject(node)) {
      const auto& t = index.at(i);
      if (t.predicate == v::rdf::first && !first) {
        first = &t.object;
      } else if (t.predicate == v::rdf::rest && !rest) {
        rest = &t.object;
      } else if (t.predicate == v::rdf::type && t.object.is_iri() &&
                 t.object.value() == "http://www.w3.org/1999/02/22-rdf-syntax-ns#List") {
        // tolerated
      } else {
        throw ExpressionError(node, "unexpected triple <" + t.predicate + "> in list");
      }
      note(consumed, i);
    }
    if (!first || !rest) throw ExpressionError(node, "list node lacks rdf:first or rdf:rest");
    items.push_back(*first);
    node = *rest;
  }
  return items;
}

PropertyExpression resolve_property(const rdf::Term& node, const TripleIndex& index,
                                    std::vector<std::size_t>* consumed) {
  if (node.is_iri()) return PropertyExpression::named_property(node.value());
  if (!node.is_blank()) throw ExpressionError(node, "literal where a property was expected");
  auto triples = index.by_subject(node);
  if (triples.size() != 1 || index.at(triples[0]).predicate != v::owl::inverse_of ||
      !index.at(triples[0]).object.is_iri()) {
    throw ExpressionError(node, "unrecognized property expression");
  }
  note(consumed, triples[0]);
  return PropertyExpression::inverse(index.at(triples[0]).object.value());
}

std::uint64_t parse_cardinality(const rdf::Term& node, const rdf::Term& value) {
  if (!value.is_literal()) throw ExpressionError(node, "cardinality is not a literal");
  const auto& s = value.value();
  std::uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ExpressionError(node, "cardinality '" + s + "' is not a non-negative integer");
  }
  return n;
}

ClassExpression resolve_class(const rdf::Term& node, const TripleIndex& index,
                              std::vector<std::size_t>* consumed, Visiting& visiting);

ClassExpression resolve_blank(const rdf::Term& node, const TripleIndex& index,
                              std::vector<std::size_t>* consumed, Visiting& visiting) {
  if (!visiting.insert(node).second) throw ExpressionError(node, "cyclic class expression");

  struct Slot {
    std::string_view predicate;
    const rdf::Term* value = nullptr;
  };
  const rdf::Term* on_property = nullptr;
  const rdf::Term* qualifier = nullptr;  // onClass / onDataRange
  std::vector<Slot> restriction;         // value-bearing restriction predicates
  std::vector<Slot> constructor;         // boolean constructors
  auto triples = index.by_subject(node);
  if (triples.empty()) throw ExpressionError(node, "blank node has no description");

  for (auto i : triples) {
    const auto& t = index.at(i);
    const std::string& p = t.predicate;
    if (p == v::rdf::type) {
      const auto& o = t.object;
      if (!o.is_iri() || (o.value() != v::owl::restriction && o.value() != v::owl::class_ &&
                          o.value() != v::rdfs::datatype)) {
        throw ExpressionError(node, "unexpected type " + rdf::to_ntriples(o) + " in expression");
      }
    } else if (p == v::owl::on_property) {
      if (on_property) throw ExpressionError(node, "restriction has two owl:onProperty values");
      on_property = &t.object;
    } else if (p == v::owl::on_class || p == v::owl::on_data_range) {
      if (qualifier) throw ExpressionError(node, "restriction has two qualifiers");
      qualifier = &t.object;
    } else if (p == v::owl::some_values_from || p == v::owl::all_values_from ||
               p == v::owl::has_value || p == v::owl::min_cardinality ||
               p == v::owl::max_cardinality || p == v::owl::cardinality ||
               p == v::owl::min_qualified_cardinality || p == v::owl::max_qualified_cardinality ||
               p == v::owl::qualified_cardinality) {
      restriction.push_back({p, &t.object});
    } else if (p == v::owl::intersection_of || p == v::owl::union_of ||
               p == v::owl::complement_of || p == v::owl::one_of) {
      constructor.push_back({p, &t.object});
    } else {
      throw ExpressionError(node, "unexpected predicate <" + p + "> in expression");
    }
    note(consumed, i);
  }

  ClassExpression out;
  if (on_property || !restriction.empty()) {
    if (!on_property) throw ExpressionError(node, "restriction without owl:onProperty");
    if (restriction.size() != 1 || !constructor.empty()) {
      throw ExpressionError(node, "restriction must carry exactly one value predicate");
    }
    out.property = resolve_property(*on_property, index, consumed);
    std::string_view p = restriction[0].predicate;
    const rdf::Term& value = *restriction[0].value;
    bool qualified = p == v::owl::min_qualified_cardinality ||
                     p == v::owl::max_qualified_cardinality || p == v::owl::qualified_cardinality;
    if (qualified != (qualifier != nullptr)) {
      throw ExpressionError(node, qualified ? "qualified cardinality without owl:onClass"
                                            : "owl:onClass on an unqualified restriction");
    }
    if (p == v::owl::some_values_from || p == v::owl::all_values_from) {
      out.kind = p == v::owl::some_values_from ? ClassExpression::Kind::some_values_from
                                               : ClassExpression::Kind::all_values_from;
      out.operands.push_back(resolve_class(value, index, consumed, visiting));
    } else if (p == v::owl::has_value) {
      if (value.is_blank()) throw ExpressionError(node, "anonymous individual in owl:hasValue");
      out.kind = ClassExpression::Kind::has_value;
      out.values.push_back(value);
    } else {
      out.kind = ClassExpression::Kind::cardinality;
      out.cardinality = parse_cardinality(node, value);
      if (p == v::owl::min_cardinality || p == v::owl::min_qualified_cardinality) {
        out.cardinality_kind = CardinalityKind::min;
      } else if (p == v::owl::max_cardinality || p == v::owl::max_qualified_cardinality) {
        out.cardinality_kind = CardinalityKind::max;
      } else {
        out.cardinality_kind = CardinalityKind::exact;
      }
      if (qualifier) out.operands.push_back(resolve_class(*qualifier, index, consumed, visiting));
    }
  } else {
    if (constructor.size() != 1 || qualifier) {
      throw ExpressionError(node, "not a class expression");
    }
    std::string_view p = constructor[0].predicate;
    const rdf::Term& value = *constructor[0].value;
    if (p == v::owl::complement_of) {
      out.kind = ClassExpression::Kind::complement;
      out.operands.push_back(resolve_class(value, index, consumed, visiting));
    } else {
      auto items = read_list_impl(value, index, consumed);
      if (items.empty()) throw ExpressionError(node, "empty operand list");
      if (p == v::owl::one_of) {
        out.kind = ClassExpression::Kind::one_of;
        for (auto& item : items) {
          if (item.is_blank()) throw ExpressionError(node, "anonymous individual in owl:oneOf");
          out.values.push_back(std::move(item));
        }
      } else {
        out.kind = p == v::owl::intersection_of ? ClassExpression::Kind::intersection
                                                : ClassExpression::Kind::union_of;
        for (const auto& item : items) {
          out.operands.push_back(resolve_class(item, index, consumed, visiting));
        }
      }
    }
  }
  visiting.erase(node);
  return out;
}

ClassExpression resolve_class(const rdf::Term& node, const TripleIndex& index,
                              std::vector<std::size_t>* consumed, Visiting& visiting) {
  if (node.is_iri()) return ClassExpression::named_class(node.value());
  if (node.is_literal()) throw ExpressionError(node, "literal where a class was expected");
  return resolve_blank(node, index, consumed, visiting);
}

}  // namespace

ClassExpression resolve_class_expression(const rdf::Term& node, const TripleIndex& index,
                                         std::vector<std::size_t>* consumed) {
  Visiting visiting;
  return resolve_class(node, index, consumed, visiting);
}

PropertyExpression resolve_property_expression(const rdf::Term& node, const TripleIndex& index,
                                               std::vector<std::size_t>* consumed) {
  return resolve_property(node, index, consumed);
}

std::vector<rdf::Term> read_list(const rdf::Term& head, const TripleIndex& index,
                                 std::vector<std::size_t>* consumed) {
  return read_list_impl(head, index, consumed);
}

}  // namespace ontolookup::owl
