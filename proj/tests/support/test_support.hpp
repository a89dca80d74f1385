#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fanci/domain.hpp"
#include "fanci/rng.hpp"

namespace fanci::testing {

// Suffix list shared by the hand-computed expectations.
inline const std::vector<std::string>& test_psl_entries() {
  static const std::vector<std::string> entries = {
      "com", "net", "org", "uk", "co.uk", "arpa", "in-addr.arpa", "ip6.arpa",
  };
  return entries;
}

inline PublicSuffixList test_psl() {
  return PublicSuffixList::from_entries(test_psl_entries());
}

// Random syntactically valid domain: 1-4 labels over [a-z0-9-_].
inline std::string random_valid_domain(SeededRng& rng) {
  static constexpr char kChars[] = "abcdefghijklmnopqrstuvwxyz0123456789-_";
  while (true) {
    const std::size_t labels = 1 + rng.next_below(4);
    std::string out;
    for (std::size_t l = 0; l < labels; ++l) {
      if (l > 0) out += '.';
      const std::size_t len = 1 + rng.next_below(12);
      for (std::size_t i = 0; i < len; ++i) {
        out += kChars[rng.next_below(38)];
      }
    }
    if (is_valid_domain(out)) return out;
  }
}

// Exhaustive minimal-edit-script search for the optimal string alignment
// distance: explores every admissible script (match, substitute, delete,
// insert, adjacent transposition on disjoint regions) with branch-and-bound
// pruning. Independent oracle for the DP implementation.
namespace detail {

inline void osa_search(std::string_view a, std::string_view b, std::size_t i,
                       std::size_t j, std::size_t cost, std::size_t& best) {
  const std::size_t rem_a = a.size() - i;
  const std::size_t rem_b = b.size() - j;
  const std::size_t lower =
      rem_a > rem_b ? rem_a - rem_b : rem_b - rem_a;  // |len difference|
  if (cost + lower >= best) return;
  if (rem_a == 0 && rem_b == 0) {
    best = cost;
    return;
  }
  if (rem_a > 0 && rem_b > 0) {
    if (a[i] == b[j]) {
      osa_search(a, b, i + 1, j + 1, cost, best);  // match first
    }
    if (rem_a > 1 && rem_b > 1 && a[i] == b[j + 1] && a[i + 1] == b[j] &&
        a[i] != b[j]) {
      osa_search(a, b, i + 2, j + 2, cost + 1, best);  // transposition
    }
    if (a[i] != b[j]) {
      osa_search(a, b, i + 1, j + 1, cost + 1, best);  // substitution
    }
  }
  if (rem_a > 0) osa_search(a, b, i + 1, j, cost + 1, best);  // deletion
  if (rem_b > 0) osa_search(a, b, i, j + 1, cost + 1, best);  // insertion
}

}  // namespace detail

inline std::size_t osa_brute_force(std::string_view a, std::string_view b) {
  // max(|a|, |b|) is always achievable (substitute along the diagonal, then
  // delete or insert the tail), so it is a valid initial bound even though
  // pruning keeps the search from re-deriving it.
  std::size_t best = std::max(a.size(), b.size());
  if (best == 0) return 0;
  detail::osa_search(a, b, 0, 0, 0, best);
  return best;
}

// All strings over `alphabet` with length <= max_len, shortest first.
inline std::vector<std::string> all_strings(std::string_view alphabet,
                                            std::size_t max_len) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char c : alphabet) {
        out.push_back(out[i] + c);
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace fanci::testing
