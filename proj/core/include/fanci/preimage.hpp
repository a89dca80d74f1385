#pragma once

#include <cstdint>
#include <vector>

#include "fanci/bigcount.hpp"
#include "fanci/domain.hpp"
#include "fanci/features.hpp"

namespace fanci {

// Within a DSF the dot never occurs, so at most 38 distinct characters.
inline constexpr int kMaxDsfAlphabet = 38;
// Group capacities used by the content bound: 10 digits, 5 vowels, and the
// remaining characters treated as one "other" pool.
inline constexpr int kUniqueDigitCap = 10;
inline constexpr int kUniqueVowelCap = 5;
inline constexpr int kUniqueOtherCap = 24;

// Quantities recoverable from a feature vector alone.
struct InferredQuantities {
  long dsf_length = 0;        // p1
  long subdomain_count = 0;   // p2
  long suffix_length = 0;     // p3
  long digit_count = 0;       // p4
  long vowel_count = 0;       // p5
  long other_count = 0;       // p6
};

// Character frequency distribution candidate: one positive count per
// distinct character, descending, summing to the DSF length.
struct FrequencyPartition {
  std::vector<int> parts;

  long total() const;
  double entropy_bits() const;
};

// Split of the frequency bins into digit/vowel/other groups, reduced to the
// unique-character counts. `multiplicity` is the number of distinct bin
// assignments that produce the same triple.
struct GroupAllocation {
  int unique_digits = 0;
  int unique_vowels = 0;
  int unique_others = 0;
  long multiplicity = 1;
};

// Exact sum alphabet^min_len + ... + alphabet^max_len.
BigCount sum_powers(unsigned alphabet, unsigned min_len, unsigned max_len);

// |S| = sum of 39^i for i in [4, 253].
BigCount domain_space_size();

// |F| = product of the per-feature value-choice counts:
// 250^15 * 251^9 * 2^8 * 38 * 39 * 194.
BigCount feature_space_size();

// |S| / |F| rendered to `significant_digits`.
BigCount::Scientific reduction_factor(int significant_digits = 4);

// Applies the inference rules to unnormalized features; every quantity must
// round to an integer within `tol` and be non-negative, otherwise throws
// error(errc::inconsistent_features).
InferredQuantities infer_quantities(const RawFeatures& features,
                                    double tol = 1e-6);

// All multisets of `n` positive integers summing to p1 whose frequency
// entropy lies within `tol` bits of `entropy_bits`.
std::vector<FrequencyPartition> solve_frequency_distribution(
    long p1, int n, double entropy_bits, double tol = 1e-6);

// All feasible (unique digits, vowels, others) splits of the partition's
// bins: group sums must equal (p4, p5, p6) and unique counts respect the
// (10, 5, 24) caps. Deduplicated by triple with multiplicity recorded.
std::vector<GroupAllocation> enumerate_group_allocations(
    const FrequencyPartition& partition, const InferredQuantities& q);

// C(p1, p4) * C(p1-p4, p5) * C(p1-1, p2-1): slot patterns times dot
// placements.
BigCount dsf_struct(const InferredQuantities& q);

// Sum over allocations of C(10,u_d) * C(5,u_v) * C(24,u_o) *
// u_d^p4 * u_v^p5 * u_o^p6, with 0^0 == 1.
BigCount dsf_cont(const std::vector<GroupAllocation>& allocations,
                  const InferredQuantities& q);

// t_f * dsf_struct * dsf_cont.
BigCount preimage_bound(const InferredQuantities& q,
                        const std::vector<GroupAllocation>& allocations,
                        long t_f);

// C(p1-1, n-1): compositions of p1 into n positive parts, the enumeration
// bound for the entropy solver.
BigCount count_entropy_candidates(long p1, int n);

struct PreimageOptions {
  double entropy_tol = 1e-6;
  // Skip partition enumeration when C(p1-1, n-1) exceeds this bound and fall
  // back to allocation triples constrained only by (p4, p5, p6) and the
  // group caps (a superset, so the bound stays an upper bound).
  std::uint64_t max_candidates = 2'000'000;
};

struct PreimageReport {
  InferredQuantities quantities;
  long suffix_candidates = 0;  // t_f
  BigCount entropy_candidates;
  bool partitions_enumerated = false;
  std::size_t matching_partitions = 0;
  std::vector<GroupAllocation> allocations;
  BigCount structure;  // dsf_struct
  BigCount content;    // dsf_cont
  BigCount bound;      // preimage_bound
};

// Full single-vector analysis as the CLI reports it.
PreimageReport analyze_preimages(const RawFeatures& features,
                                 const PublicSuffixList& psl,
                                 const PreimageOptions& options = {});

}  // namespace fanci
