#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontolookup/rdf/term.hpp"

namespace ontolookup::rdf {

enum class Format { turtle, rdfxml, ntriples };

std::string_view to_string(Format format) noexcept;

// Extension wins (.ttl, .nt, .owl/.rdf/.xml); otherwise the leading bytes
// are sniffed for an XML prolog or an rdf:RDF root; anything else is Turtle.
Format detect_format(std::string_view filename, std::string_view leading_bytes);

// Syntax error. Turtle and N-Triples errors carry a 1-based line/column;
// RDF/XML errors carry the element path (and the XML position when known).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column,
             std::string element_path = {});

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& element_path() const noexcept { return element_path_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string element_path_;
};

// A well-formed construct this parser deliberately does not support, such as
// rdf:parseType="Literal".
class UnsupportedConstruct : public ParseError {
 public:
  UnsupportedConstruct(std::string construct, std::string element_path, std::size_t line,
                       std::size_t column);

  const std::string& construct() const noexcept { return construct_; }

 private:
  std::string construct_;
};

struct ParseOptions {
  // Relative IRIs resolve against this; also the initial @base / xml:base.
  std::string base_iri;
  // Prepended to every blank-node id so that ids from different documents
  // of one load never alias.
  std::string blank_prefix;
};

using TripleSink = std::function<void(Triple&&)>;

void parse(std::string_view document, Format format, const ParseOptions& options,
           const TripleSink& sink);

std::vector<Triple> parse(std::string_view document, Format format, const ParseOptions& options);

}  // namespace ontolookup::rdf
