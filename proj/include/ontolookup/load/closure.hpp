#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ontolookup/load/fetch.hpp"
#include "ontolookup/rdf/term.hpp"

namespace ontolookup::load {

struct ClosureDocument {
  std::string reference;  // root source or the owl:imports IRI that led here
  std::string location;
  std::vector<std::string> ontology_iris;  // owl:Ontology subjects
  std::vector<rdf::Triple> triples;
};

struct ImportClosure {
  std::vector<ClosureDocument> documents;  // discovery order, root first
  std::vector<std::string> warnings;
};

using DocumentSource = std::function<FetchedDocument(const std::string& reference)>;

// Breadth-first over owl:imports of each document's ontology headers. Each
// IRI is fetched at most once. A root that cannot be fetched or parsed
// throws; failing imports become warnings. Blank ids are prefixed with the
// document ordinal.
ImportClosure import_closure(const std::string& root, const DocumentSource& source);

}  // namespace ontolookup::load
