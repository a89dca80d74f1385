#include "fanci/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "fanci/errors.hpp"

namespace fanci {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_letter(char c) { return c >= 'a' && c <= 'z'; }
bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}
bool is_consonant(char c) { return is_letter(c) && !is_vowel(c); }
bool is_hex(char c) { return is_digit(c) || (c >= 'a' && c <= 'f'); }

// Percentile by linear interpolation between closest ranks.
double percentile(const std::vector<int>& sorted, double p) {
  const std::size_t n = sorted.size();
  const double h = static_cast<double>(n - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double frac = h - static_cast<double>(lo);
  return static_cast<double>(sorted[lo]) +
         frac * static_cast<double>(sorted[hi] - sorted[lo]);
}

// The raw string is an exact concatenation of >= 2 copies of a prefix.
bool has_prefix_repetition(std::string_view raw) {
  const std::size_t n = raw.size();
  for (std::size_t d = 1; d <= n / 2; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < n; ++i) {
      if (raw[i] != raw[i % d]) {
        repeats = false;
        break;
      }
    }
    if (repeats) return true;
  }
  return false;
}

// Dotted-decimal IPv4 somewhere in `s`: four complete digit runs of value
// 0..255 separated by single dots, not adjacent to further digits.
bool contains_ipv4(std::string_view s) {
  const std::size_t n = s.size();
  for (std::size_t start = 0; start < n; ++start) {
    if (!is_digit(s[start])) continue;
    if (start > 0 && is_digit(s[start - 1])) continue;  // inside a digit run
    std::size_t pos = start;
    bool ok = true;
    for (int octet = 0; octet < 4 && ok; ++octet) {
      std::size_t run = pos;
      int value = 0;
      while (run < n && is_digit(s[run]) && run - pos < 3) {
        value = value * 10 + (s[run] - '0');
        ++run;
      }
      if (run == pos || value > 255 || (run < n && is_digit(s[run]))) {
        ok = false;
        break;
      }
      pos = run;
      if (octet < 3) {
        if (pos < n && s[pos] == '.') {
          ++pos;
        } else {
          ok = false;
        }
      }
    }
    if (ok) return true;
  }
  return false;
}

// Total length of maximal runs (length >= 2) of characters matching `pred`.
template <typename Pred>
std::size_t run_length_sum(std::string_view s, Pred pred) {
  std::size_t total = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!pred(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && pred(s[j])) ++j;
    if (j - i >= 2) total += j - i;
    i = j;
  }
  return total;
}

void fill_stats(RawFeatures& f, std::size_t base, const DistributionStats& s) {
  f.values[base + 0] = s.std_dev;
  f.values[base + 1] = s.median;
  f.values[base + 2] = s.mean;
  f.values[base + 3] = s.min;
  f.values[base + 4] = s.max;
  f.values[base + 5] = s.perc_25;
  f.values[base + 6] = s.perc_75;
}

}  // namespace

std::vector<int> ngram_count_distribution(std::string_view dsf, int n) {
  std::vector<int> counts;
  if (n <= 0 || dsf.size() < static_cast<std::size_t>(n)) return counts;
  std::unordered_map<std::string_view, int> table;
  table.reserve(dsf.size());
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= dsf.size(); ++i) {
    ++table[dsf.substr(i, static_cast<std::size_t>(n))];
  }
  counts.reserve(table.size());
  for (const auto& [gram, count] : table) counts.push_back(count);
  std::sort(counts.begin(), counts.end());
  return counts;
}

DistributionStats distribution_stats(const std::vector<int>& counts) {
  DistributionStats s;
  if (counts.empty()) return s;
  std::vector<int> sorted = counts;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sum = 0;
  for (int c : sorted) sum += c;
  s.mean = sum / n;
  double sq = 0;
  for (int c : sorted) {
    const double d = static_cast<double>(c) - s.mean;
    sq += d * d;
  }
  s.std_dev = std::sqrt(sq / n);
  s.min = sorted.front();
  s.max = sorted.back();
  s.median = percentile(sorted, 0.50);
  s.perc_25 = percentile(sorted, 0.25);
  s.perc_75 = percentile(sorted, 0.75);
  return s;
}

double shannon_entropy_bits(std::string_view s) {
  if (s.empty()) return 0.0;
  std::array<int, 256> counts{};
  for (unsigned char c : s) ++counts[c];
  const double n = static_cast<double>(s.size());
  double h = 0.0;
  for (int c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

RawFeatures FeatureExtractor::extract_raw(const DomainName& d) const {
  RawFeatures f;
  const std::string& dsf = d.dsf;
  const double dsf_len = static_cast<double>(dsf.size());
  const std::size_t sub_count = d.subdomain_labels.size();

  f.values[kFLength] = static_cast<double>(d.raw.size());

  // One-hot sub-domain count, clipped at 4; zero sub-domains use bucket 1.
  const std::size_t bucket = std::min<std::size_t>(std::max<std::size_t>(sub_count, 1), 4);
  f.values[kFSubdomains1 + bucket - 1] = 1.0;

  f.values[kFSubdomainLengthsMean] =
      sub_count > 0 ? dsf_len / static_cast<double>(sub_count) : 0.0;
  f.values[kFContainsWwwDot] = d.raw.find("www.") != std::string::npos ? 1.0 : 0.0;
  f.values[kFHasValidTld] = d.public_suffix.empty() ? 0.0 : 1.0;

  bool one_char = false;
  bool only_digits = false;
  std::size_t hex_labels = 0;
  bool tld_infix = false;
  for (const auto& label : d.subdomain_labels) {
    if (label.size() == 1) one_char = true;
    if (!label.empty() &&
        std::all_of(label.begin(), label.end(), is_digit)) {
      only_digits = true;
    }
    if (!label.empty() && std::all_of(label.begin(), label.end(), is_hex)) {
      ++hex_labels;
    }
    if (psl_->contains(label)) tld_infix = true;
  }
  f.values[kFOneCharSubdomains] = one_char ? 1.0 : 0.0;
  f.values[kFPrefixRepetition] = has_prefix_repetition(d.raw) ? 1.0 : 0.0;
  f.values[kFContainsTldAsInfix] = tld_infix ? 1.0 : 0.0;
  f.values[kFOnlyDigitsSubdomains] = only_digits ? 1.0 : 0.0;
  f.values[kFOnlyHexSubdomainsRatio] =
      sub_count > 0 ? static_cast<double>(hex_labels) / static_cast<double>(sub_count)
                    : 0.0;

  std::size_t underscores = 0;
  std::size_t digits = 0;
  std::size_t vowels = 0;
  std::array<int, 256> char_counts{};
  for (unsigned char c : dsf) {
    ++char_counts[c];
    if (c == '_') ++underscores;
    if (is_digit(static_cast<char>(c))) ++digits;
    if (is_vowel(static_cast<char>(c))) ++vowels;
  }
  std::size_t alphabet = 0;
  std::size_t repeated = 0;
  for (int c : char_counts) {
    if (c > 0) ++alphabet;
    if (c >= 2) ++repeated;
  }

  f.values[kFUnderscoreRatio] =
      dsf.empty() ? 0.0 : static_cast<double>(underscores) / dsf_len;

  std::string joined;
  for (std::size_t i = 0; i < sub_count; ++i) {
    if (i > 0) joined += '.';
    joined += d.subdomain_labels[i];
  }
  f.values[kFContainsIpv4Addr] = contains_ipv4(joined) ? 1.0 : 0.0;

  f.values[kFContainsDigits] = digits > 0 ? 1.0 : 0.0;
  const std::size_t vowel_divisor = dsf.size() - digits;
  f.values[kFVowelRatio] =
      vowel_divisor > 0 ? static_cast<double>(vowels) / static_cast<double>(vowel_divisor)
                        : 0.0;
  f.values[kFDigitRatio] =
      dsf.empty() ? 0.0 : static_cast<double>(digits) / dsf_len;
  f.values[kFCharDiversity] =
      dsf.empty() ? 0.0 : static_cast<double>(alphabet) / dsf_len;
  f.values[kFAlphabetSize] = static_cast<double>(alphabet);
  f.values[kFRatioOfRepeatedChars] =
      alphabet > 0 ? static_cast<double>(repeated) / static_cast<double>(alphabet)
                   : 0.0;
  f.values[kFConsecutiveConsonantRatio] =
      dsf.empty() ? 0.0
                  : static_cast<double>(run_length_sum(dsf, is_consonant)) / dsf_len;
  f.values[kFConsecutiveDigitsRatio] =
      dsf.empty() ? 0.0
                  : static_cast<double>(run_length_sum(dsf, is_digit)) / dsf_len;

  fill_stats(f, kFNgramBase1, distribution_stats(ngram_count_distribution(dsf, 1)));
  fill_stats(f, kFNgramBase2, distribution_stats(ngram_count_distribution(dsf, 2)));
  fill_stats(f, kFNgramBase3, distribution_stats(ngram_count_distribution(dsf, 3)));

  f.values[kFShannonEntropy] = shannon_entropy_bits(dsf);
  return f;
}

FeatureVector normalize(const RawFeatures& raw) {
  FeatureVector v;
  v.values = raw.values;
  v.values[kFLength] = raw.values[kFLength] / static_cast<double>(kMaxDomainLength);
  v.values[kFSubdomainLengthsMean] =
      raw.values[kFLength] > 0
          ? raw.values[kFSubdomainLengthsMean] / raw.values[kFLength]
          : 0.0;
  v.values[kFAlphabetSize] = raw.values[kFAlphabetSize] / 38.0;
  for (std::size_t base : {kFNgramBase1, kFNgramBase2, kFNgramBase3}) {
    const double max_count = raw.values[base + 4];
    for (std::size_t k = 0; k < 7; ++k) {
      v.values[base + k] = max_count > 0 ? raw.values[base + k] / max_count : 0.0;
    }
  }
  v.values[kFShannonEntropy] =
      raw.values[kFAlphabetSize] > 1.0
          ? raw.values[kFShannonEntropy] / std::log2(raw.values[kFAlphabetSize])
          : 0.0;
  return v;
}

const std::array<std::string, kFeatureCount>& feature_column_names() {
  static const std::array<std::string, kFeatureCount> names = [] {
    std::array<std::string, kFeatureCount> n;
    std::size_t i = 0;
    n[i++] = "length";
    for (int b = 1; b <= 4; ++b) {
      n[i++] = "number_of_subdomains_" + std::to_string(b);
    }
    n[i++] = "subdomain_lengths_mean";
    n[i++] = "contains_wwwdot";
    n[i++] = "has_valid_tld";
    n[i++] = "one_char_subdomains";
    n[i++] = "prefix_repetition";
    n[i++] = "contains_tld_as_infix";
    n[i++] = "only_digits_subdomains";
    n[i++] = "only_hex_subdomains_ratio";
    n[i++] = "underscore_ratio";
    n[i++] = "contains_ipv4_addr";
    n[i++] = "contains_digits";
    n[i++] = "vowel_ratio";
    n[i++] = "digit_ratio";
    n[i++] = "char_diversity";
    n[i++] = "alphabet_size";
    n[i++] = "ratio_of_repeated_chars";
    n[i++] = "consecutive_consonant_ratio";
    n[i++] = "consecutive_digits_ratio";
    for (int g = 1; g <= 3; ++g) {
      const std::string prefix = std::to_string(g) + "-grams_";
      for (const char* stat :
           {"std", "median", "mean", "min", "max", "perc_25", "perc_75"}) {
        n[i++] = prefix + stat;
      }
    }
    n[i++] = "shannon_entropy";
    return n;
  }();
  return names;
}

std::string format_double(double value) {
  std::array<char, 40> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string format_double_12(double value) {
  std::array<char, 48> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 12);
  return std::string(buf.data(), res.ptr);
}

void write_feature_csv(std::ostream& out,
                       const std::vector<std::string>& domains,
                       const std::vector<RawFeatures>& rows) {
  const bool with_domain = !domains.empty();
  if (with_domain && domains.size() != rows.size()) {
    throw error(errc::dimension_mismatch, "domain/feature row count mismatch");
  }
  const auto& names = feature_column_names();
  if (with_domain) out << "domain,";
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << names[i] << (i + 1 < names.size() ? "," : "\n");
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (with_domain) out << domains[r] << ',';
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      out << format_double(rows[r].values[i]) << (i + 1 < kFeatureCount ? "," : "\n");
    }
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r') {
    fields.back().pop_back();
  }
  return fields;
}

}  // namespace

FeatureCsv read_feature_csv(std::istream& in) {
  FeatureCsv csv;
  std::string line;
  if (!std::getline(in, line)) {
    throw error(errc::io, "empty feature CSV");
  }
  const auto header = split_csv_line(line);
  const auto& names = feature_column_names();
  bool with_domain = false;
  if (header.size() == kFeatureCount + 1 && header[0] == "domain") {
    with_domain = true;
  } else if (header.size() != kFeatureCount) {
    throw error(errc::io, "feature CSV header has " +
                              std::to_string(header.size()) + " columns");
  }
  const std::size_t offset = with_domain ? 1 : 0;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (header[i + offset] != names[i]) {
      throw error(errc::io, "unexpected feature column '" + header[i + offset] +
                                "', want '" + names[i] + "'");
    }
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != kFeatureCount + offset) {
      throw error(errc::io, "feature CSV row " + std::to_string(line_no) +
                                " has " + std::to_string(fields.size()) +
                                " fields");
    }
    RawFeatures f;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      const std::string& s = fields[i + offset];
      const auto res =
          std::from_chars(s.data(), s.data() + s.size(), f.values[i]);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw error(errc::io, "bad numeric value '" + s + "' at row " +
                                  std::to_string(line_no));
      }
    }
    csv.rows.push_back(f);
    csv.domains.push_back(with_domain ? fields[0] : std::string());
  }
  return csv;
}

}  // namespace fanci
