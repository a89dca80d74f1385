#pragma once

#include <cstddef>
#include <string_view>

namespace fanci {

struct DistanceResult {
  std::size_t edits = 0;
  double normalized = 0.0;  // edits / max(|a|, |b|), 0 when both empty
};

// Damerau-Levenshtein distance, optimal string alignment variant: insert,
// delete, substitute, plus adjacent transposition as one operation, with no
// substring edited twice.
std::size_t damerau_levenshtein(std::string_view a, std::string_view b);

double normalized_distance(std::string_view a, std::string_view b);

DistanceResult distance_result(std::string_view a, std::string_view b);

}  // namespace fanci
