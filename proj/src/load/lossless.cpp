#include "ontolookup/load/lossless.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ontolookup/owl/interpret.hpp"
#include "ontolookup/rdf/ntriples_writer.hpp"
#include "ontolookup/rdf/vocab.hpp"

namespace ontolookup::load {

using nlohmann::json;
namespace v = vocab;

json term_to_json(const rdf::Term& term) {
  if (term.is_iri()) return {{"@iri", term.value()}};
  if (term.is_blank()) throw LosslessError("blank node outside a tree");
  if (!term.language().empty()) return {{"@value", term.value()}, {"@lang", term.language()}};
  if (term.datatype() == v::xsd::string) return term.value();
  return {{"@value", term.value()}, {"@datatype", term.datatype()}};
}

namespace {

using TermSet = std::unordered_set<rdf::Term, rdf::TermHash>;
template <typename T>
using TermMap = std::unordered_map<rdf::Term, T, rdf::TermHash>;

struct AttachedBlock {
  std::vector<std::size_t> payload;
  bool shared = false;
  std::optional<rdf::Term> copied_target;
  std::string sort_key;
};

class Encoder {
 public:
  explicit Encoder(const owl::OwlEntity& entity)
      : entity_(entity), index_(entity.consumed), subject_(rdf::Term::iri(entity.iri)) {
    covered_.assign(index_.size(), false);
    attach_reifications();
    count_in_degrees();
  }

  json encode() {
    json root = json::object();
    root["@id"] = entity_.iri;
    emit_subject_triples(subject_, root, /*host=*/true);

    json related = json::array();
    std::vector<std::pair<std::string, rdf::Term>> pending;
    for (std::size_t i = 0; i < index_.size(); ++i) {
      if (covered_[i]) continue;
      const auto& s = index_.at(i).subject;
      if (std::none_of(pending.begin(), pending.end(), [&](const auto& p) { return p.second == s; })) {
        pending.emplace_back(key_of(s), s);
      }
    }
    std::stable_sort(pending.begin(), pending.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    // Entry points first; then nodes only reachable around a cycle.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& [key, s] : pending) {
        if (s.is_blank() && (emitted_.contains(s) || (pass == 0 && in_degree(s) > 0))) continue;
        if (s.is_iri() && pass == 1) continue;
        if (s.is_iri()) {
          json node = json::object();
          node["@id"] = s.value();
          emit_subject_triples(s, node, false);
          related.push_back(std::move(node));
        } else {
          roots_.insert(s);
          related.push_back(encode_blank(s));
        }
      }
    }
    if (!related.empty()) root["@related"] = std::move(related);
    for (std::size_t i = 0; i < index_.size(); ++i) {
      if (!covered_[i]) throw LosslessError("triple left out of the lossless tree: " + rdf::to_ntriples(index_.at(i)));
    }
    return root;
  }

 private:
  std::string key_of(const rdf::Term& t) {
    if (!t.is_blank()) return rdf::to_ntriples(t);
    auto it = keys_.find(t);
    if (it != keys_.end()) return it->second;
    return keys_.emplace(t, index_.structure_key(t)).first->second;
  }

  std::size_t in_degree(const rdf::Term& node) const {
    auto it = in_degree_.find(node);
    return it == in_degree_.end() ? 0 : it->second;
  }

  void attach_reifications() {
    auto host_positions = index_.by_subject(subject_);
    // Exact targets first, so copies can join the blocks already on a host.
    for (int pass = 0; pass < 2; ++pass)
    for (const auto& r : entity_.reified) {
      if (r.attachment == owl::ReifiedAnnotation::Attachment::standalone || !r.node.is_blank()) continue;
      if (blocks_.contains(r.node)) continue;
      const rdf::Term& ax = r.node;
      if (!index_.by_object(ax).empty()) continue;
      std::vector<std::size_t> structural;
      std::vector<std::size_t> payload;
      const rdf::Term* target = nullptr;
      std::size_t target_position = 0;
      int sources = 0, properties = 0, targets = 0;
      bool typed = false;
      for (auto i : index_.by_subject(ax)) {
        const auto& t = index_.at(i);
        if (!typed && t.predicate == v::rdf::type && t.object.is_iri() && t.object.value() == v::owl::axiom) {
          typed = true;
          structural.push_back(i);
        } else if (t.predicate == v::owl::annotated_source) {
          ++sources;
          structural.push_back(i);
          if (t.object != subject_) sources = 99;
        } else if (t.predicate == v::owl::annotated_property) {
          ++properties;
          structural.push_back(i);
          if (!t.object.is_iri() || t.object.value() != r.annotated_property) properties = 99;
        } else if (t.predicate == v::owl::annotated_target) {
          ++targets;
          target = &t.object;
          target_position = i;
        } else {
          payload.push_back(i);
        }
      }
      if (!typed || sources != 1 || properties != 1 || targets != 1) continue;
      bool exact = std::any_of(host_positions.begin(), host_positions.end(), [&](std::size_t h) {
        return index_.at(h).predicate == r.annotated_property && index_.at(h).object == *target;
      });
      if (exact != (pass == 0)) continue;

      std::optional<std::size_t> host;
      bool shared = false;
      for (auto h : host_positions) {
        const auto& t = index_.at(h);
        if (t.predicate == r.annotated_property && t.object == *target) {
          host = h;
          shared = target->is_blank();
          break;
        }
      }
      if (!host && target->is_blank()) {
        if (index_.by_object(*target).size() != 1) continue;
        // Copies pile onto the most annotated look-alike; hosts that tie on
        // count and signature are interchangeable.
        const std::string key = key_of(*target);
        std::pair<std::size_t, std::string> best;
        for (auto h : host_positions) {
          const auto& t = index_.at(h);
          if (t.predicate != r.annotated_property || !t.object.is_blank() || key_of(t.object) != key) continue;
          std::pair<std::size_t, std::string> rank{attached_count(h), attachment_signature(h)};
          if (!host || rank.first > best.first || (rank.first == best.first && rank.second < best.second)) {
            host = h;
            best = std::move(rank);
          }
        }
      }
      if (!host) continue;

      AttachedBlock block;
      block.payload = payload;
      block.shared = shared;
      if (shared) {
        structural.push_back(target_position);
        implied_edges_.insert(target_position);
      } else if (target->is_blank()) {
        block.copied_target = *target;
        covered_[target_position] = true;
      } else {
        structural.push_back(target_position);
      }
      std::vector<std::string> parts;
      for (auto i : payload) parts.push_back(index_.at(i).predicate + " " + key_of(index_.at(i).object));
      std::sort(parts.begin(), parts.end());
      for (auto& p : parts) block.sort_key += p + "\n";
      block.sort_key += shared ? "shared" : (block.copied_target ? "copy " + key_of(*block.copied_target) : "");
      for (auto i : structural) covered_[i] = true;
      for (auto i : structural) implied_edges_.insert(i);
      for (auto i : payload) covered_[i] = true;
      attached_[*host].push_back(std::move(block));
      blocks_.insert(ax);
    }
  }

  std::size_t attached_count(std::size_t host) const {
    auto it = attached_.find(host);
    return it == attached_.end() ? 0 : it->second.size();
  }

  std::string attachment_signature(std::size_t host) const {
    auto it = attached_.find(host);
    if (it == attached_.end()) return {};
    std::vector<std::string> keys;
    for (const auto& b : it->second) keys.push_back(b.sort_key);
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (const auto& k : keys) out += k + "\x1f";
    return out;
  }

  void count_in_degrees() {
    for (std::size_t i = 0; i < index_.size(); ++i) {
      const auto& o = index_.at(i).object;
      if (o.is_blank() && !implied_edges_.contains(i)) ++in_degree_[o];
    }
  }

  bool needs_id(const rdf::Term& node) const { return in_degree(node) + (roots_.contains(node) ? 1 : 0) >= 2; }

  // Positions of a well-formed list chain starting at `head`, or empty.
  std::vector<std::size_t> list_chain(const rdf::Term& head) const {
    std::vector<std::size_t> positions;
    TermSet seen;
    rdf::Term node = head;
    while (!(node.is_iri() && node.value() == v::rdf::nil)) {
      if (!node.is_blank() || emitted_.contains(node) || roots_.contains(node) || blocks_.contains(node) ||
          in_degree(node) != 1 || !seen.insert(node).second) {
        return {};
      }
      auto triples = index_.by_subject(node);
      if (triples.size() != 2) return {};
      const rdf::Triple* first = nullptr;
      const rdf::Triple* rest = nullptr;
      for (auto i : triples) {
        const auto& t = index_.at(i);
        if (t.predicate == v::rdf::first && !first) {
          first = &t;
          positions.insert(positions.end(), {i});
        } else if (t.predicate == v::rdf::rest && !rest) {
          rest = &t;
          positions.push_back(i);
        } else {
          return {};
        }
        if (covered_[i]) return {};
      }
      node = rest->object;
    }
    return positions;
  }

  json encode_value(const rdf::Term& term) {
    if (!term.is_blank()) return term_to_json(term);
    if (emitted_.contains(term)) return {{"@ref", ids_.at(term)}};
    auto chain = list_chain(term);
    if (!chain.empty()) {
      json items = json::array();
      for (std::size_t k = 0; k < chain.size(); k += 2) {
        // chain holds (first, rest) position pairs per node
        std::size_t first = index_.at(chain[k]).predicate == v::rdf::first ? chain[k] : chain[k + 1];
        covered_[chain[k]] = covered_[chain[k + 1]] = true;
        emitted_.insert(index_.at(chain[k]).subject);
        items.push_back(encode_value(index_.at(first).object));
      }
      return {{"@list", std::move(items)}};
    }
    return encode_blank(term);
  }

  json encode_blank(const rdf::Term& node) {
    json out = json::object();
    emitted_.insert(node);
    if (needs_id(node)) {
      std::string id = "_:b" + std::to_string(++next_id_);
      ids_.emplace(node, id);
      out["@id"] = id;
    }
    emit_subject_triples(node, out, false);
    return out;
  }

  void emit_subject_triples(const rdf::Term& subject, json& out, bool host) {
    std::map<std::string, std::vector<std::size_t>> by_predicate;
    for (auto i : index_.by_subject(subject)) {
      if (!covered_[i]) by_predicate[index_.at(i).predicate].push_back(i);
    }
    for (auto& [predicate, positions] : by_predicate) {
      for (auto i : positions) covered_[i] = true;
      std::vector<std::pair<std::string, std::size_t>> keyed;
      for (auto i : positions) keyed.emplace_back(value_key(i, host), i);
      std::stable_sort(keyed.begin(), keyed.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      json values = json::array();
      for (const auto& [key, i] : keyed) {
        json value = encode_value(index_.at(i).object);
        if (host) annotate(i, value);
        values.push_back(std::move(value));
      }
      out[predicate] = std::move(values);
    }
  }

  // Values that look alike can still differ in what is attached to them.
  std::string value_key(std::size_t i, bool host) {
    std::string key = key_of(index_.at(i).object);
    if (!host) return key;
    auto it = attached_.find(i);
    if (it == attached_.end()) return key;
    std::vector<std::string> blocks;
    for (const auto& b : it->second) blocks.push_back(b.sort_key);
    std::sort(blocks.begin(), blocks.end());
    for (const auto& b : blocks) key += "\x1f" + b;
    return key;
  }

  void annotate(std::size_t host, json& value) {
    auto it = attached_.find(host);
    if (it == attached_.end()) return;
    auto& blocks = it->second;
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const AttachedBlock& a, const AttachedBlock& b) { return a.sort_key < b.sort_key; });
    json entries = json::array();
    for (const auto& block : blocks) {
      json entry = json::object();
      std::map<std::string, std::vector<std::size_t>> by_predicate;
      for (auto i : block.payload) by_predicate[index_.at(i).predicate].push_back(i);
      for (auto& [predicate, positions] : by_predicate) {
        std::stable_sort(positions.begin(), positions.end(), [&](std::size_t a, std::size_t b) {
          return key_of(index_.at(a).object) < key_of(index_.at(b).object);
        });
        json values = json::array();
        for (auto i : positions) values.push_back(encode_value(index_.at(i).object));
        entry[predicate] = std::move(values);
      }
      if (block.shared) entry["@shared_target"] = true;
      if (block.copied_target) entry["@target"] = encode_value(*block.copied_target);
      entries.push_back(std::move(entry));
    }
    if (value.is_string()) value = json{{"@value", value.get<std::string>()}};
    value["@annotations"] = std::move(entries);
  }

  const owl::OwlEntity& entity_;
  owl::TripleIndex index_;
  rdf::Term subject_;
  std::vector<bool> covered_;
  std::unordered_map<std::size_t, std::vector<AttachedBlock>> attached_;
  std::unordered_set<std::size_t> implied_edges_;
  TermSet blocks_;
  TermMap<std::size_t> in_degree_;
  TermMap<std::string> keys_;
  TermMap<std::string> ids_;
  TermSet emitted_;
  TermSet roots_;
  std::size_t next_id_ = 0;
};

bool is_reserved(const std::string& key) { return !key.empty() && key[0] == '@'; }

class Decoder {
 public:
  std::vector<rdf::Triple> decode(const json& root) {
    if (!root.is_object() || !root.contains("@id") || !root["@id"].is_string()) {
      throw LosslessError("lossless root needs an \"@id\" IRI");
    }
    rdf::Term subject = rdf::Term::iri(root["@id"].get<std::string>());
    decode_map(subject, root);
    if (root.contains("@related")) {
      const auto& related = root["@related"];
      if (!related.is_array()) throw LosslessError("\"@related\" must be an array");
      for (const auto& node : related) {
        if (!node.is_object()) throw LosslessError("\"@related\" entries must be objects");
        if (node.contains("@id") && node["@id"].is_string() && !node["@id"].get<std::string>().starts_with("_:")) {
          decode_map(rdf::Term::iri(node["@id"].get<std::string>()), node);
        } else {
          decode_value(node);
        }
      }
    }
    return std::move(out_);
  }

 private:
  rdf::Term fresh() { return rdf::Term::blank("l" + std::to_string(++counter_)); }

  rdf::Term named_blank(const json& id) {
    if (!id.is_string() || !id.get<std::string>().starts_with("_:")) throw LosslessError("bad blank id");
    auto [it, inserted] = ids_.try_emplace(id.get<std::string>());
    if (inserted) it->second = fresh();
    return it->second;
  }

  void decode_map(const rdf::Term& subject, const json& node) {
    for (const auto& [key, values] : node.items()) {
      if (is_reserved(key)) continue;
      if (!values.is_array()) throw LosslessError("values of <" + key + "> must be an array");
      for (const auto& value : values) {
        rdf::Term object = decode_value(value);
        out_.push_back({subject, key, object});
        if (value.is_object() && value.contains("@annotations")) decode_annotations(subject, key, object, value);
      }
    }
  }

  rdf::Term decode_value(const json& value) {
    if (value.is_string()) return rdf::Term::literal(value.get<std::string>());
    if (!value.is_object()) throw LosslessError("unexpected value " + value.dump());
    if (value.contains("@iri")) return rdf::Term::iri(value["@iri"].get<std::string>());
    if (value.contains("@value")) {
      std::string lexical = value["@value"].get<std::string>();
      if (value.contains("@lang")) return rdf::Term::literal(lexical, {}, value["@lang"].get<std::string>());
      if (value.contains("@datatype")) return rdf::Term::literal(lexical, value["@datatype"].get<std::string>());
      return rdf::Term::literal(lexical);
    }
    if (value.contains("@ref")) return named_blank(value["@ref"]);
    if (value.contains("@list")) {
      const auto& items = value["@list"];
      if (!items.is_array() || items.empty()) throw LosslessError("\"@list\" must be a non-empty array");
      rdf::Term head = fresh();
      rdf::Term node = head;
      for (std::size_t k = 0; k < items.size(); ++k) {
        out_.push_back({node, std::string(v::rdf::first), decode_value(items[k])});
        rdf::Term next = k + 1 < items.size() ? fresh() : rdf::Term::iri(std::string(v::rdf::nil));
        out_.push_back({node, std::string(v::rdf::rest), next});
        node = next;
      }
      return head;
    }
    rdf::Term node = value.contains("@id") ? named_blank(value["@id"]) : fresh();
    decode_map(node, value);
    return node;
  }

  void decode_annotations(const rdf::Term& subject, const std::string& predicate, const rdf::Term& object,
                          const json& value) {
    const auto& entries = value["@annotations"];
    if (!entries.is_array()) throw LosslessError("\"@annotations\" must be an array");
    for (const auto& entry : entries) {
      if (!entry.is_object()) throw LosslessError("annotation entries must be objects");
      rdf::Term ax = fresh();
      out_.push_back({ax, std::string(v::rdf::type), rdf::Term::iri(std::string(v::owl::axiom))});
      out_.push_back({ax, std::string(v::owl::annotated_source), subject});
      out_.push_back({ax, std::string(v::owl::annotated_property), rdf::Term::iri(predicate)});
      rdf::Term target = object;
      if (entry.contains("@target")) {
        target = decode_value(entry["@target"]);
      } else if (object.is_blank() && !entry.value("@shared_target", false)) {
        throw LosslessError("annotation on a blank value without a target");
      }
      out_.push_back({ax, std::string(v::owl::annotated_target), target});
      decode_map(ax, entry);
    }
  }

  std::vector<rdf::Triple> out_;
  std::unordered_map<std::string, rdf::Term> ids_;
  std::size_t counter_ = 0;
};

}  // namespace

json to_lossless(const owl::OwlEntity& entity) { return Encoder(entity).encode(); }

std::vector<rdf::Triple> from_lossless(const json& value) {
  try {
    return Decoder().decode(value);
  } catch (const json::exception& e) {
    throw LosslessError(std::string("malformed lossless value: ") + e.what());
  }
}

json property_expression_to_json(const owl::PropertyExpression& p) {
  using K = owl::PropertyExpression::Kind;
  switch (p.kind) {
    case K::named:
      return {{"type", "named"}, {"iri", p.iri}};
    case K::inverse_of:
      return {{"type", "inverse_of"}, {"iri", p.iri}};
    case K::chain: {
      json chain = json::array();
      for (const auto& step : p.chain) chain.push_back(property_expression_to_json(step));
      return {{"type", "chain"}, {"chain", std::move(chain)}};
    }
  }
  return {};
}

json class_expression_to_json(const owl::ClassExpression& c) {
  using K = owl::ClassExpression::Kind;
  json out;
  auto operands = [&] {
    json list = json::array();
    for (const auto& op : c.operands) list.push_back(class_expression_to_json(op));
    return list;
  };
  switch (c.kind) {
    case K::named:
      return {{"type", "named"}, {"iri", c.iri}};
    case K::some_values_from:
    case K::all_values_from:
      out = {{"type", c.kind == K::some_values_from ? "some_values_from" : "all_values_from"},
             {"property", property_expression_to_json(c.property)}};
      if (!c.operands.empty()) out["filler"] = class_expression_to_json(c.operands[0]);
      return out;
    case K::has_value:
      return {{"type", "has_value"},
              {"property", property_expression_to_json(c.property)},
              {"value", term_to_json(c.values.at(0))}};
    case K::intersection:
      return {{"type", "intersection"}, {"operands", operands()}};
    case K::union_of:
      return {{"type", "union"}, {"operands", operands()}};
    case K::complement:
      return {{"type", "complement"}, {"operand", class_expression_to_json(c.operands.at(0))}};
    case K::one_of: {
      json values = json::array();
      for (const auto& t : c.values) values.push_back(term_to_json(t));
      return {{"type", "one_of"}, {"values", std::move(values)}};
    }
    case K::cardinality: {
      static const char* kinds[] = {"min", "max", "exact"};
      out = {{"type", "cardinality"},
             {"cardinality_kind", kinds[static_cast<int>(c.cardinality_kind)]},
             {"cardinality", c.cardinality},
             {"property", property_expression_to_json(c.property)}};
      if (!c.operands.empty()) out["filler"] = class_expression_to_json(c.operands[0]);
      return out;
    }
  }
  return out;
}

namespace {

json payload_to_json(const owl::ReifiedAnnotation& r) {
  json payload = json::object();
  for (const auto& entry : r.payload) {
    json value = entry.value.is_blank() ? json{{"@blank", true}} : term_to_json(entry.value);
    payload[entry.property].push_back(std::move(value));
  }
  return payload;
}

}  // namespace

json axioms_to_json(const owl::OwlEntity& entity) {
  using K = owl::LogicalAxiom::Kind;
  json out = json::array();
  for (const auto& a : entity.logical_axioms) {
    json j = {{"type", owl::to_string(a.kind)}};
    switch (a.kind) {
      case K::sub_class_of:
      case K::equivalent_class:
      case K::disjoint_with:
      case K::domain:
      case K::range:
      case K::type_assertion:
        j["expression"] = class_expression_to_json(a.expression);
        break;
      case K::sub_property_of:
      case K::property_chain:
        j["property"] = property_expression_to_json(a.property);
        break;
      case K::inverse_of:
      case K::same_as:
      case K::different_from:
        j["iri"] = a.iri;
        break;
      case K::characteristic:
        j["characteristic"] = owl::to_string(a.characteristic);
        break;
      case K::all_disjoint_classes: {
        json members = json::array();
        for (const auto& m : a.members) members.push_back(class_expression_to_json(m));
        j["members"] = std::move(members);
        break;
      }
    }
    if (!a.reified.empty()) {
      json annotations = json::array();
      for (auto r : a.reified) annotations.push_back(payload_to_json(entity.reified.at(r)));
      j["annotations"] = std::move(annotations);
    }
    out.push_back(std::move(j));
  }
  return out;
}

json annotations_to_json(const owl::OwlEntity& entity) {
  std::vector<std::pair<std::string, json>> keyed;
  for (const auto& a : entity.annotations) {
    json j = {{"property", a.property},
              {"value", a.value.is_anonymous() ? json{{"@blank", true}} : term_to_json(a.value.value)}};
    if (!a.value.reified.empty()) {
      json payloads = json::array();
      for (auto r : a.value.reified) payloads.push_back(payload_to_json(entity.reified.at(r)));
      std::sort(payloads.begin(), payloads.end(), [](const json& x, const json& y) { return x.dump() < y.dump(); });
      j["annotations"] = std::move(payloads);
    }
    keyed.emplace_back(a.property + "\x1f" + j.dump(), std::move(j));
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  json out = json::array();
  for (auto& [key, j] : keyed) out.push_back(std::move(j));
  return out;
}

}  // namespace ontolookup::load
