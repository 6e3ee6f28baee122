#pragma once

#include <string>
#include <string_view>

namespace ontolookup::rdf {

// True when `iri` starts with a URI scheme (`ALPHA *( ALPHA / DIGIT / "+" / "-" / "." ) ":"`).
bool is_absolute_iri(std::string_view iri) noexcept;

// RFC 3986 reference resolution (section 5.2, strict parser). An empty base
// returns `reference` unchanged.
std::string resolve_iri(std::string_view base, std::string_view reference);

// `iri` without its fragment part.
std::string_view strip_fragment(std::string_view iri) noexcept;

// Local name: text after the last '#' or '/'. Whole IRI if neither occurs.
std::string_view iri_short_form(std::string_view iri) noexcept;

// Converts a filesystem path to a `file://` IRI (percent-encoding spaces and '%').
std::string file_path_to_iri(std::string_view absolute_path);

}  // namespace ontolookup::rdf
