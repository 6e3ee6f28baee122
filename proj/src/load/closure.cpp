#include "ontolookup/load/closure.hpp"

#include <deque>
#include <set>

#include "ontolookup/rdf/parser.hpp"
#include "ontolookup/rdf/vocab.hpp"

namespace ontolookup::load {

namespace {

ClosureDocument parse_document(const std::string& reference, FetchedDocument fetched, std::size_t ordinal) {
  ClosureDocument doc;
  doc.reference = reference;
  doc.location = fetched.location;
  std::string_view leading = std::string_view(fetched.bytes).substr(0, 256);
  auto format = rdf::detect_format(fetched.location, leading);
  rdf::ParseOptions options{.base_iri = fetched.base_iri, .blank_prefix = "d" + std::to_string(ordinal) + "_"};
  doc.triples = rdf::parse(fetched.bytes, format, options);
  for (const auto& t : doc.triples) {
    if (t.subject.is_iri() && t.predicate == vocab::rdf::type && t.object.is_iri() &&
        t.object.value() == vocab::owl::ontology) {
      doc.ontology_iris.push_back(t.subject.value());
    }
  }
  return doc;
}

std::vector<std::string> imports_of(const ClosureDocument& doc) {
  std::set<std::string> headers(doc.ontology_iris.begin(), doc.ontology_iris.end());
  std::vector<std::string> out;
  for (const auto& t : doc.triples) {
    if (t.predicate == vocab::owl::imports && t.subject.is_iri() && headers.contains(t.subject.value()) &&
        t.object.is_iri()) {
      out.push_back(t.object.value());
    }
  }
  return out;
}

}  // namespace

ImportClosure import_closure(const std::string& root, const DocumentSource& source) {
  ImportClosure closure;
  std::set<std::string> visited{root};
  closure.documents.push_back(parse_document(root, source(root), 0));

  std::deque<std::string> queue;
  auto enqueue_imports = [&](const ClosureDocument& doc) {
    for (const auto& iri : doc.ontology_iris) visited.insert(iri);
    for (auto& iri : imports_of(doc)) {
      if (visited.insert(iri).second) queue.push_back(std::move(iri));
    }
  };
  enqueue_imports(closure.documents.front());

  while (!queue.empty()) {
    std::string reference = std::move(queue.front());
    queue.pop_front();
    try {
      auto doc = parse_document(reference, source(reference), closure.documents.size());
      closure.documents.push_back(std::move(doc));
      enqueue_imports(closure.documents.back());
    } catch (const std::exception& e) {
      closure.warnings.push_back("import " + reference + " skipped: " + e.what());
    }
  }
  return closure;
}

}  // namespace ontolookup::load
