#include <algorithm>
#include <unordered_set>

#include "ontolookup/owl/interpret.hpp"
#include "ontolookup/rdf/ntriples_writer.hpp"

namespace ontolookup::owl {

TripleIndex::TripleIndex(std::vector<rdf::Triple> triples) : triples_(std::move(triples)) {
  for (std::size_t i = 0; i < triples_.size(); ++i) {
    by_subject_[triples_[i].subject].push_back(i);
    if (!triples_[i].object.is_literal()) by_object_[triples_[i].object].push_back(i);
  }
}

std::span<const std::size_t> TripleIndex::by_subject(const rdf::Term& subject) const {
  auto it = by_subject_.find(subject);
  if (it == by_subject_.end()) return {};
  return it->second;
}

std::span<const std::size_t> TripleIndex::by_object(const rdf::Term& object) const {
  auto it = by_object_.find(object);
  if (it == by_object_.end()) return {};
  return it->second;
}

std::vector<std::size_t> TripleIndex::with_predicate(const rdf::Term& subject,
                                                     std::string_view predicate) const {
  std::vector<std::size_t> out;
  for (auto i : by_subject(subject)) {
    if (triples_[i].predicate == predicate) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> TripleIndex::blank_closure(const rdf::Term& node) const {
  std::vector<std::size_t> out;
  if (!node.is_blank()) return out;
  std::unordered_set<rdf::Term, rdf::TermHash> seen{node};
  std::vector<const rdf::Term*> stack{&node};
  while (!stack.empty()) {
    const rdf::Term* current = stack.back();
    stack.pop_back();
    for (auto i : by_subject(*current)) {
      out.push_back(i);
      const rdf::Term& o = triples_[i].object;
      if (o.is_blank() && seen.insert(o).second) stack.push_back(&o);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void append_structure_key(const TripleIndex& index, const rdf::Term& node,
                          std::vector<const rdf::Term*>& path, std::string& out) {
  if (!node.is_blank()) {
    out += rdf::to_ntriples(node);
    return;
  }
  for (std::size_t depth = 0; depth < path.size(); ++depth) {
    if (*path[depth] == node) {
      // Back-edge: encode by distance so copies of a cycle compare equal.
      out += "^" + std::to_string(path.size() - depth);
      return;
    }
  }
  path.push_back(&node);
  std::vector<std::string> parts;
  for (auto i : index.by_subject(node)) {
    const auto& t = index.at(i);
    std::string part = "<" + t.predicate + "> ";
    append_structure_key(index, t.object, path, part);
    parts.push_back(std::move(part));
  }
  path.pop_back();
  std::sort(parts.begin(), parts.end());
  out += "[";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += ";";
    out += parts[k];
  }
  out += "]";
}

}  // namespace

std::string TripleIndex::structure_key(const rdf::Term& node) const {
  std::string out;
  std::vector<const rdf::Term*> path;
  append_structure_key(*this, node, path, out);
  return out;
}

}  // namespace ontolookup::owl
