#include "ontolookup/rdf/parser.hpp"

#include <algorithm>
#include <cctype>

#include "parsers.hpp"

namespace ontolookup::rdf {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column,
                       std::string element_path)
    : std::runtime_error(message), line_(line), column_(column),
      element_path_(std::move(element_path)) {}

UnsupportedConstruct::UnsupportedConstruct(std::string construct, std::string element_path,
                                           std::size_t line, std::size_t column)
    : ParseError("unsupported RDF/XML construct " + construct + " (element " + element_path + ")",
                 line, column, element_path),
      construct_(std::move(construct)) {}

std::string_view to_string(Format format) noexcept {
  switch (format) {
    case Format::turtle: return "turtle";
    case Format::rdfxml: return "rdfxml";
    case Format::ntriples: return "ntriples";
  }
  return "turtle";
}

Format detect_format(std::string_view filename, std::string_view leading_bytes) {
  // Strip query/fragment so URLs like ".../x.owl?format=raw" still match.
  auto cut = filename.find_first_of("?#");
  if (cut != std::string_view::npos) filename = filename.substr(0, cut);
  auto dot = filename.rfind('.');
  auto slash = filename.find_last_of("/\\");
  if (dot != std::string_view::npos && (slash == std::string_view::npos || dot > slash)) {
    std::string ext(filename.substr(dot + 1));
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == "ttl") return Format::turtle;
    if (ext == "nt") return Format::ntriples;
    if (ext == "owl" || ext == "rdf" || ext == "xml") return Format::rdfxml;
  }
  std::string_view head = leading_bytes;
  if (head.starts_with("\xEF\xBB\xBF")) head.remove_prefix(3);
  auto first = head.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos) head.remove_prefix(first);
  if (head.starts_with("<?xml") || head.starts_with("<rdf:RDF")) return Format::rdfxml;
  return Format::turtle;
}

void parse(std::string_view document, Format format, const ParseOptions& options,
           const TripleSink& sink) {
  if (document.starts_with("\xEF\xBB\xBF")) document.remove_prefix(3);
  switch (format) {
    case Format::turtle: detail::parse_turtle(document, options, sink); break;
    case Format::ntriples: detail::parse_ntriples(document, options, sink); break;
    case Format::rdfxml: detail::parse_rdfxml(document, options, sink); break;
  }
}

std::vector<Triple> parse(std::string_view document, Format format, const ParseOptions& options) {
  std::vector<Triple> out;
  parse(document, format, options, [&out](Triple&& t) { out.push_back(std::move(t)); });
  return out;
}

}  // namespace ontolookup::rdf
