#include "fanci/edit_distance.hpp"

#include <algorithm>
#include <vector>

namespace fanci {

std::size_t damerau_levenshtein(std::string_view a, std::string_view b) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (m == 0) return n;
  if (n == 0) return m;

  // Rolling three rows: transposition looks two rows back.
  std::vector<std::size_t> prev2(n + 1), prev(n + 1), cur(n + 1);
  for (std::size_t j = 0; j <= n; ++j) prev[j] = j;

  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t sub_cost = a[i - 1] == b[j - 1] ? 0 : 1;
      std::size_t best = std::min({prev[j] + 1,             // deletion
                                   cur[j - 1] + 1,          // insertion
                                   prev[j - 1] + sub_cost});  // substitution
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        best = std::min(best, prev2[j - 2] + 1);  // adjacent transposition
      }
      cur[j] = best;
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[n];
}

double normalized_distance(std::string_view a, std::string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(damerau_levenshtein(a, b)) /
         static_cast<double>(longest);
}

DistanceResult distance_result(std::string_view a, std::string_view b) {
  DistanceResult r;
  r.edits = damerau_levenshtein(a, b);
  const std::size_t longest = std::max(a.size(), b.size());
  r.normalized =
      longest == 0 ? 0.0
                   : static_cast<double>(r.edits) / static_cast<double>(longest);
  return r;
}

}  // namespace fanci
