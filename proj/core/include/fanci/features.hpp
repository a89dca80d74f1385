#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fanci/domain.hpp"

namespace fanci {

inline constexpr std::size_t kFeatureCount = 45;

// Component indices into the 45-entry vector (table row order; the
// number_of_subdomains one-hot and the per-n n-gram statistics are flattened).
enum feature_index : std::size_t {
  kFLength = 0,
  kFSubdomains1 = 1,  // one-hot bucket: exactly 1 sub-domain (or none)
  kFSubdomains2 = 2,
  kFSubdomains3 = 3,
  kFSubdomains4Plus = 4,
  kFSubdomainLengthsMean = 5,
  kFContainsWwwDot = 6,
  kFHasValidTld = 7,
  kFOneCharSubdomains = 8,
  kFPrefixRepetition = 9,
  kFContainsTldAsInfix = 10,
  kFOnlyDigitsSubdomains = 11,
  kFOnlyHexSubdomainsRatio = 12,
  kFUnderscoreRatio = 13,
  kFContainsIpv4Addr = 14,
  kFContainsDigits = 15,
  kFVowelRatio = 16,
  kFDigitRatio = 17,
  kFCharDiversity = 18,
  kFAlphabetSize = 19,
  kFRatioOfRepeatedChars = 20,
  kFConsecutiveConsonantRatio = 21,
  kFConsecutiveDigitsRatio = 22,
  kFNgramBase1 = 23,  // 7 statistics per n, order: std, median, mean, min,
  kFNgramBase2 = 30,  //                           max, perc_25, perc_75
  kFNgramBase3 = 37,
  kFShannonEntropy = 44,
};

// Extracted (unnormalized) features, table row order.
struct RawFeatures {
  std::array<double, kFeatureCount> values{};

  double operator[](std::size_t i) const { return values[i]; }

  double length() const { return values[kFLength]; }
  double subdomain_lengths_mean() const { return values[kFSubdomainLengthsMean]; }
  double vowel_ratio() const { return values[kFVowelRatio]; }
  double digit_ratio() const { return values[kFDigitRatio]; }
  double char_diversity() const { return values[kFCharDiversity]; }
  double alphabet_size() const { return values[kFAlphabetSize]; }
  double shannon_entropy() const { return values[kFShannonEntropy]; }
};

// Features scaled to [0,1] (each entry divided by the upper bound of its
// value range; n-gram statistics by their distribution's max count).
struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  double operator[](std::size_t i) const { return values[i]; }
};

struct DistributionStats {
  double std_dev = 0;
  double median = 0;
  double mean = 0;
  double min = 0;
  double max = 0;
  double perc_25 = 0;
  double perc_75 = 0;
};

// Counts of the distinct n-grams of `dsf` (window size n, stride 1),
// ascending. Empty when |dsf| < n.
std::vector<int> ngram_count_distribution(std::string_view dsf, int n);

// Population standard deviation; median/percentiles by linear interpolation
// between closest ranks. All zero for an empty distribution.
DistributionStats distribution_stats(const std::vector<int>& counts);

// Shannon entropy of the character frequency distribution, in bits.
double shannon_entropy_bits(std::string_view s);

FeatureVector normalize(const RawFeatures& raw);

class FeatureExtractor {
 public:
  explicit FeatureExtractor(const PublicSuffixList& psl) : psl_(&psl) {}

  RawFeatures extract_raw(const DomainName& domain) const;
  FeatureVector extract_normalized(const DomainName& domain) const {
    return normalize(extract_raw(domain));
  }

  const PublicSuffixList& suffix_list() const { return *psl_; }

 private:
  const PublicSuffixList* psl_;
};

// Canonical CSV column names, table row order.
const std::array<std::string, kFeatureCount>& feature_column_names();

// CSV with an optional leading "domain" column; values keep full precision
// (shortest decimal that round-trips the double).
void write_feature_csv(std::ostream& out,
                       const std::vector<std::string>& domains,
                       const std::vector<RawFeatures>& rows);

struct FeatureCsv {
  std::vector<std::string> domains;  // empty strings if no domain column
  std::vector<RawFeatures> rows;
};

FeatureCsv read_feature_csv(std::istream& in);

// Shortest decimal rendering that parses back to exactly the same double.
std::string format_double(double value);
// Fixed 12-significant-digit rendering (feature-vector canonicalization).
std::string format_double_12(double value);

}  // namespace fanci
