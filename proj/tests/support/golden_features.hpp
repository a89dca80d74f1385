#pragma once

#include <array>
#include <string>
#include <vector>

#include "fanci/features.hpp"

namespace fanci::testing {

// Hand-computed 45-component vectors (table row order) for the shared test
// suffix list. Derived by applying each per-feature definition on paper and
// cross-checked with an independent scripted computation.
struct GoldenVector {
  const char* domain;
  std::array<double, kFeatureCount> values;
};

inline const std::vector<GoldenVector>& golden_vectors() {
  static const std::vector<GoldenVector> golden = {
      // dsf "wwwexample": counts {w:3, e:2, x/a/m/p/l:1}
      {"www.example.com",
       {15, 0, 1, 0, 0, 5, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0,
        0.3, 0, 0.7, 7, 0.2857142857142857, 0.6, 0,
        0.7284313590846836, 1, 1.4285714285714286, 1, 3, 1, 1.5,
        0.33071891388307384, 1, 1.125, 1, 2, 1, 1,
        0, 1, 1, 1, 1, 1, 1,
        2.6464393446710153}},
      // dsf "4321": four one-char digit labels under in-addr.arpa
      {"4.3.2.1.in-addr.arpa",
       {20, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 1,
        0, 1, 1, 4, 0, 0, 1,
        0, 1, 1, 1, 1, 1, 1,
        0, 1, 1, 1, 1, 1, 1,
        0, 1, 1, 1, 1, 1, 1,
        2}},
      // dsf "1234": all digits, vowel divisor guarded to zero
      {"1234.com",
       {8, 1, 0, 0, 0, 4, 0, 1, 0, 0, 0, 1, 1, 0, 0, 1,
        0, 1, 1, 4, 0, 0, 1,
        0, 1, 1, 1, 1, 1, 1,
        0, 1, 1, 1, 1, 1, 1,
        0, 1, 1, 1, 1, 1, 1,
        2}},
      // dsf "a": single character, 2- and 3-gram distributions empty
      {"a.com",
       {5, 1, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0,
        1, 0, 1, 1, 0, 0, 0,
        0, 1, 1, 1, 1, 1, 1,
        0, 0, 0, 0, 0, 0, 0,
        0, 0, 0, 0, 0, 0, 0,
        0}},
      // "local" is not a suffix entry here: dsf "serverlocal", no valid TLD
      {"server.local",
       {12, 0, 1, 0, 0, 5.5, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
        0.36363636363636365, 0, 0.7272727272727273, 8, 0.375,
        0.36363636363636365, 0,
        0.4841229182759271, 1, 1.375, 1, 2, 1, 2,
        0.3142696805273545, 1, 1.1111111111111112, 1, 2, 1, 1,
        0, 1, 1, 1, 1, 1, 1,
        2.9139770731827523}},
  };
  return golden;
}

}  // namespace fanci::testing
