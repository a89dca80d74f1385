#include "fanci/preimage.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>

#include "fanci/errors.hpp"

namespace fanci {

namespace {

// Nearest integer if the residue is within tol, otherwise throws.
long round_checked(double value, double tol, const char* what) {
  const double nearest = std::round(value);
  if (std::abs(value - nearest) > tol) {
    throw error(errc::inconsistent_features,
                std::string(what) + " does not round to an integer: " +
                    format_double(value));
  }
  if (nearest < 0) {
    throw error(errc::inconsistent_features,
                std::string(what) + " is negative: " + format_double(nearest));
  }
  return static_cast<long>(nearest);
}

}  // namespace

long FrequencyPartition::total() const {
  long t = 0;
  for (int p : parts) t += p;
  return t;
}

double FrequencyPartition::entropy_bits() const {
  const double n = static_cast<double>(total());
  if (n <= 0) return 0.0;
  double h = 0.0;
  for (int p : parts) {
    const double f = static_cast<double>(p) / n;
    h -= f * std::log2(f);
  }
  return h;
}

BigCount sum_powers(unsigned alphabet, unsigned min_len, unsigned max_len) {
  BigCount total;
  for (unsigned i = min_len; i <= max_len; ++i) {
    total += BigCount::pow(alphabet, i);
  }
  return total;
}

BigCount domain_space_size() { return sum_powers(39, 4, 253); }

BigCount feature_space_size() {
  // Value-choice counts per feature family: 15 length-like integers (250
  // each), 9 ratios whose dividend may be zero (251 each), 8 binary flags,
  // the 38-way alphabet size, the 39-way repeated-chars ratio, and roughly
  // 194 distinct entropy values.
  BigCount f(1ul);
  f *= BigCount::pow(250, 15);
  f *= BigCount::pow(251, 9);
  f *= BigCount::pow(2, 8);
  f *= BigCount(38ul);
  f *= BigCount(39ul);
  f *= BigCount(194ul);
  return f;
}

BigCount::Scientific reduction_factor(int significant_digits) {
  return BigCount::ratio_scientific(domain_space_size(), feature_space_size(),
                                    significant_digits);
}

InferredQuantities infer_quantities(const RawFeatures& f, double tol) {
  if (f.char_diversity() <= 0.0) {
    throw error(errc::inconsistent_features, "char_diversity must be positive");
  }
  if (f.subdomain_lengths_mean() <= 0.0) {
    throw error(errc::inconsistent_features,
                "subdomain_lengths_mean must be positive");
  }
  InferredQuantities q;
  q.dsf_length = round_checked(f.alphabet_size() / f.char_diversity(), tol, "p1");
  q.subdomain_count = round_checked(
      static_cast<double>(q.dsf_length) / f.subdomain_lengths_mean(), tol, "p2");
  const double p3 =
      f.length() - static_cast<double>(q.dsf_length + q.subdomain_count);
  q.suffix_length = round_checked(p3, tol, "p3");
  q.digit_count = round_checked(
      f.digit_ratio() * static_cast<double>(q.dsf_length), tol, "p4");
  q.vowel_count = round_checked(
      f.vowel_ratio() * static_cast<double>(q.dsf_length - q.digit_count), tol,
      "p5");
  q.other_count = q.dsf_length - (q.digit_count + q.vowel_count);
  if (q.other_count < 0) {
    throw error(errc::inconsistent_features, "p6 is negative");
  }
  return q;
}

namespace {

// Partitions of `remaining` into exactly `parts_left` parts, each in
// [1, max_part], descending.
void partitions_rec(long remaining, int parts_left, int max_part,
                    std::vector<int>& current,
                    std::vector<FrequencyPartition>& out, double entropy_bits,
                    double tol) {
  if (parts_left == 0) {
    if (remaining == 0) {
      FrequencyPartition p;
      p.parts = current;
      if (std::abs(p.entropy_bits() - entropy_bits) <= tol) {
        out.push_back(std::move(p));
      }
    }
    return;
  }
  // Each remaining part needs at least 1; the next part is the largest.
  const long lo = (remaining + parts_left - 1) / parts_left;  // ceil
  const long hi = std::min<long>(max_part, remaining - (parts_left - 1));
  for (long part = hi; part >= lo; --part) {
    current.push_back(static_cast<int>(part));
    partitions_rec(remaining - part, parts_left - 1, static_cast<int>(part),
                   current, out, entropy_bits, tol);
    current.pop_back();
  }
}

}  // namespace

std::vector<FrequencyPartition> solve_frequency_distribution(long p1, int n,
                                                             double entropy_bits,
                                                             double tol) {
  std::vector<FrequencyPartition> out;
  if (n < 1 || p1 < n) return out;
  std::vector<int> current;
  current.reserve(static_cast<std::size_t>(n));
  partitions_rec(p1, n, static_cast<int>(p1), current, out, entropy_bits, tol);
  return out;
}

std::vector<GroupAllocation> enumerate_group_allocations(
    const FrequencyPartition& partition, const InferredQuantities& q) {
  // Work over distinct part values so that equal bins are interchangeable;
  // the per-value split counts identify a multiset split uniquely.
  std::map<int, int> value_count;
  for (int p : partition.parts) ++value_count[p];
  std::vector<std::pair<int, int>> values(value_count.begin(), value_count.end());

  std::map<std::tuple<int, int, int>, long> found;

  struct State {
    long digit_sum = 0, vowel_sum = 0, other_sum = 0;
    int u_d = 0, u_v = 0, u_o = 0;
  };
  State st;

  std::function<void(std::size_t)> rec = [&](std::size_t vi) {
    if (st.digit_sum > q.digit_count || st.vowel_sum > q.vowel_count ||
        st.other_sum > q.other_count || st.u_d > kUniqueDigitCap ||
        st.u_v > kUniqueVowelCap || st.u_o > kUniqueOtherCap) {
      return;
    }
    if (vi == values.size()) {
      if (st.digit_sum == q.digit_count && st.vowel_sum == q.vowel_count &&
          st.other_sum == q.other_count) {
        ++found[{st.u_d, st.u_v, st.u_o}];
      }
      return;
    }
    const auto [value, count] = values[vi];
    for (int d = 0; d <= count; ++d) {
      for (int v = 0; v + d <= count; ++v) {
        const int o = count - d - v;
        st.digit_sum += static_cast<long>(d) * value;
        st.vowel_sum += static_cast<long>(v) * value;
        st.other_sum += static_cast<long>(o) * value;
        st.u_d += d;
        st.u_v += v;
        st.u_o += o;
        rec(vi + 1);
        st.digit_sum -= static_cast<long>(d) * value;
        st.vowel_sum -= static_cast<long>(v) * value;
        st.other_sum -= static_cast<long>(o) * value;
        st.u_d -= d;
        st.u_v -= v;
        st.u_o -= o;
      }
    }
  };
  rec(0);

  std::vector<GroupAllocation> out;
  out.reserve(found.size());
  for (const auto& [key, multiplicity] : found) {
    GroupAllocation a;
    a.unique_digits = std::get<0>(key);
    a.unique_vowels = std::get<1>(key);
    a.unique_others = std::get<2>(key);
    a.multiplicity = multiplicity;
    out.push_back(a);
  }
  return out;
}

BigCount dsf_struct(const InferredQuantities& q) {
  const auto ul = [](long v) { return static_cast<unsigned long>(v); };
  BigCount result = BigCount::binomial(ul(q.dsf_length), ul(q.digit_count));
  result *= BigCount::binomial(ul(q.dsf_length - q.digit_count),
                               ul(q.vowel_count));
  if (q.subdomain_count < 1) return BigCount(0ul);
  result *= BigCount::binomial(ul(q.dsf_length - 1), ul(q.subdomain_count - 1));
  return result;
}

BigCount dsf_cont(const std::vector<GroupAllocation>& allocations,
                  const InferredQuantities& q) {
  const auto ul = [](long v) { return static_cast<unsigned long>(v); };
  BigCount total;
  for (const auto& a : allocations) {
    BigCount term = BigCount::binomial(kUniqueDigitCap, ul(a.unique_digits));
    term *= BigCount::binomial(kUniqueVowelCap, ul(a.unique_vowels));
    term *= BigCount::binomial(kUniqueOtherCap, ul(a.unique_others));
    term *= BigCount::pow(ul(a.unique_digits), ul(q.digit_count));
    term *= BigCount::pow(ul(a.unique_vowels), ul(q.vowel_count));
    term *= BigCount::pow(ul(a.unique_others), ul(q.other_count));
    total += term;
  }
  return total;
}

BigCount preimage_bound(const InferredQuantities& q,
                        const std::vector<GroupAllocation>& allocations,
                        long t_f) {
  if (t_f < 0) {
    throw error(errc::inconsistent_features, "t_f must be non-negative");
  }
  BigCount result(static_cast<unsigned long>(t_f));
  result *= dsf_struct(q);
  result *= dsf_cont(allocations, q);
  return result;
}

BigCount count_entropy_candidates(long p1, int n) {
  if (n < 1 || p1 < 1) return BigCount(0ul);
  return BigCount::binomial(static_cast<unsigned long>(p1 - 1),
                            static_cast<unsigned long>(n - 1));
}

namespace {

// Allocation triples constrained only by the group sums and caps; a superset
// of the per-partition allocations used when enumeration is infeasible.
std::vector<GroupAllocation> relaxed_allocations(const InferredQuantities& q,
                                                 int alphabet) {
  std::vector<GroupAllocation> out;
  const auto bounds = [](long total, int cap) {
    const int lo = total > 0 ? 1 : 0;
    const int hi = total > 0 ? static_cast<int>(std::min<long>(total, cap)) : 0;
    return std::pair<int, int>(lo, hi);
  };
  const auto [dlo, dhi] = bounds(q.digit_count, kUniqueDigitCap);
  const auto [vlo, vhi] = bounds(q.vowel_count, kUniqueVowelCap);
  const auto [olo, ohi] = bounds(q.other_count, kUniqueOtherCap);
  for (int d = dlo; d <= dhi; ++d) {
    for (int v = vlo; v <= vhi; ++v) {
      const int o = alphabet - d - v;
      if (o < olo || o > ohi) continue;
      GroupAllocation a;
      a.unique_digits = d;
      a.unique_vowels = v;
      a.unique_others = o;
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace

PreimageReport analyze_preimages(const RawFeatures& features,
                                 const PublicSuffixList& psl,
                                 const PreimageOptions& options) {
  PreimageReport r;
  r.quantities = infer_quantities(features);
  r.suffix_candidates = static_cast<long>(psl.count_entries_of_length(
      static_cast<std::size_t>(r.quantities.suffix_length)));

  const int alphabet = static_cast<int>(features.alphabet_size());
  r.entropy_candidates = count_entropy_candidates(r.quantities.dsf_length, alphabet);

  const BigCount limit(static_cast<unsigned long>(options.max_candidates));
  if (r.entropy_candidates <= limit) {
    r.partitions_enumerated = true;
    const auto partitions = solve_frequency_distribution(
        r.quantities.dsf_length, alphabet, features.shannon_entropy(),
        options.entropy_tol);
    r.matching_partitions = partitions.size();
    // Union of allocations across all entropy-consistent partitions,
    // deduplicated by triple.
    std::map<std::tuple<int, int, int>, long> merged;
    for (const auto& partition : partitions) {
      for (const auto& a : enumerate_group_allocations(partition, r.quantities)) {
        merged[{a.unique_digits, a.unique_vowels, a.unique_others}] +=
            a.multiplicity;
      }
    }
    for (const auto& [key, multiplicity] : merged) {
      GroupAllocation a;
      a.unique_digits = std::get<0>(key);
      a.unique_vowels = std::get<1>(key);
      a.unique_others = std::get<2>(key);
      a.multiplicity = multiplicity;
      r.allocations.push_back(a);
    }
  } else {
    r.partitions_enumerated = false;
    r.allocations = relaxed_allocations(r.quantities, alphabet);
  }

  r.structure = dsf_struct(r.quantities);
  r.content = dsf_cont(r.allocations, r.quantities);
  r.bound = preimage_bound(r.quantities, r.allocations, r.suffix_candidates);
  return r;
}

}  // namespace fanci
