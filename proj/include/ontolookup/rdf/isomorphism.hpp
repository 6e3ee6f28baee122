#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "ontolookup/rdf/term.hpp"

namespace ontolookup::rdf {

// Finds a bijection between the blank nodes of `a` and `b` under which the two
// triple multisets are equal. Colour refinement narrows candidates; ties are
// resolved by backtracking, so the result is exact.
std::optional<std::map<std::string, std::string>> find_blank_bijection(std::span<const Triple> a,
                                                                       std::span<const Triple> b);

inline bool isomorphic(std::span<const Triple> a, std::span<const Triple> b) {
  return find_blank_bijection(a, b).has_value();
}

}  // namespace ontolookup::rdf
