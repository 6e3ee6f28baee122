#pragma once

#include <string_view>

#include "ontolookup/rdf/parser.hpp"

namespace ontolookup::rdf::detail {

void parse_turtle(std::string_view document, const ParseOptions& options, const TripleSink& sink);
void parse_ntriples(std::string_view document, const ParseOptions& options,
                    const TripleSink& sink);
void parse_rdfxml(std::string_view document, const ParseOptions& options, const TripleSink& sink);

}  // namespace ontolookup::rdf::detail
