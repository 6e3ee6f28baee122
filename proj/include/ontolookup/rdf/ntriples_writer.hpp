#pragma once

#include <ostream>
#include <span>
#include <string>

#include "ontolookup/rdf/term.hpp"

namespace ontolookup::rdf {

// N-Triples surface form of a single term (`<iri>`, `_:id`, `"lex"@lang`, ...).
std::string to_ntriples(const Term& term);

// One statement without the trailing newline.
std::string to_ntriples(const Triple& triple);

void write_ntriples(std::ostream& out, std::span<const Triple> triples);

}  // namespace ontolookup::rdf
