#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fanci/dataset.hpp"
#include "fanci/domain.hpp"
#include "fanci/features.hpp"
#include "fanci/preimage.hpp"
#include "fanci/rng.hpp"
#include "support/golden_features.hpp"
#include "support/test_support.hpp"

using namespace fanci;
using fanci::testing::golden_vectors;
using fanci::testing::random_valid_domain;
using fanci::testing::test_psl;

namespace {

RawFeatures extract(const std::string& domain) {
  static const PublicSuffixList psl = test_psl();
  static const FeatureExtractor extractor(psl);
  return extractor.extract_raw(parse_domain(domain, psl));
}

}  // namespace

TEST_CASE("golden feature vectors match to 1e-9") {
  const auto& names = feature_column_names();
  for (const auto& golden : golden_vectors()) {
    const RawFeatures f = extract(golden.domain);
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      INFO(golden.domain << " / " << names[i]);
      CHECK(std::abs(f.values[i] - golden.values[i]) <= 1e-9);
    }
  }
}

TEST_CASE("n-gram count distributions") {
  CHECK(ngram_count_distribution("wwwexample", 1) ==
        std::vector<int>{1, 1, 1, 1, 1, 2, 3});
  CHECK(ngram_count_distribution("ab", 3).empty());
  CHECK(ngram_count_distribution("aaaa", 2) == std::vector<int>{3});
}

TEST_CASE("distribution statistics") {
  SUBCASE("wwwexample 1-gram counts") {
    const auto s = distribution_stats({3, 3, 1, 1, 1, 1, 1});
    CHECK(s.mean == doctest::Approx(10.0 / 7.0).epsilon(1e-12));
    CHECK(s.min == 1);
    CHECK(s.max == 3);
    CHECK(s.median == 1);
  }
  SUBCASE("empty distribution is all zeros") {
    const auto s = distribution_stats({});
    CHECK(s.std_dev == 0);
    CHECK(s.median == 0);
    CHECK(s.mean == 0);
    CHECK(s.min == 0);
    CHECK(s.max == 0);
    CHECK(s.perc_25 == 0);
    CHECK(s.perc_75 == 0);
  }
  SUBCASE("constant distribution") {
    const auto s = distribution_stats({2, 2, 2});
    CHECK(s.std_dev == 0);
    CHECK(s.mean == 2);
    CHECK(s.min == 2);
    CHECK(s.max == 2);
  }
  SUBCASE("percentiles interpolate between closest ranks") {
    const auto s = distribution_stats({1, 2, 3, 4});
    CHECK(s.perc_25 == doctest::Approx(1.75));
    CHECK(s.median == doctest::Approx(2.5));
    CHECK(s.perc_75 == doctest::Approx(3.25));
  }
}

TEST_CASE("shannon entropy") {
  CHECK(shannon_entropy_bits("aaaa") == 0.0);
  CHECK(shannon_entropy_bits("ab") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(shannon_entropy_bits("wwwexample") ==
        doctest::Approx(2.6464393446710153).epsilon(1e-12));
  CHECK(shannon_entropy_bits("") == 0.0);
}

TEST_CASE("normalization follows the per-feature upper bounds") {
  const RawFeatures raw = extract("www.example.com");
  const FeatureVector v = normalize(raw);
  CHECK(v[kFLength] == doctest::Approx(15.0 / 253.0).epsilon(1e-12));
  CHECK(v[kFSubdomainLengthsMean] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(v[kFAlphabetSize] == doctest::Approx(7.0 / 38.0).epsilon(1e-12));
  CHECK(v[kFShannonEntropy] ==
        doctest::Approx(0.9426807148172599).epsilon(1e-12));
  // n-gram statistics are scaled by the distribution max, so the max is 1.
  CHECK(v[kFNgramBase1 + 4] == 1.0);

  // Degenerate inputs: alphabet of one character keeps entropy at zero.
  const FeatureVector single = normalize(extract("aaaa.com"));
  CHECK(single[kFShannonEntropy] == 0.0);
}

TEST_CASE("every normalized component lies in [0,1] and one-hot sums to 1") {
  const auto psl = test_psl();
  const FeatureExtractor extractor(psl);
  SeededRng rng(23);
  for (int i = 0; i < 500; ++i) {
    const auto d = parse_domain(random_valid_domain(rng), psl);
    const FeatureVector v = extractor.extract_normalized(d);
    double onehot = 0;
    for (std::size_t k = kFSubdomains1; k <= kFSubdomains4Plus; ++k) {
      onehot += v[k];
    }
    CHECK(onehot == 1.0);
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      INFO(d.raw << " component " << k);
      CHECK(v[k] >= 0.0);
      CHECK(v[k] <= 1.0);
    }
  }
}

TEST_CASE("extraction is deterministic bit for bit") {
  const RawFeatures a = extract("spam.dnsbl.example.co.uk");
  const RawFeatures b = extract("spam.dnsbl.example.co.uk");
  CHECK(a.values == b.values);
}

TEST_CASE("feature collisions exist: ab.com vs ba.com") {
  CHECK(extract("ab.com").values == extract("ba.com").values);
}

TEST_CASE("structural features on edge inputs") {
  // prefix repetition looks at the whole domain string
  CHECK(extract("abab.com")[kFPrefixRepetition] == 0.0);  // "abab.com" != p^k
  const auto psl = PublicSuffixList::from_entries({"ab"});
  const FeatureExtractor extractor(psl);
  const auto rep = extractor.extract_raw(parse_domain("ab.ab", psl));
  // "ab.ab" is not an exact double of "ab." (5 chars); repetition stays 0.
  CHECK(rep[kFPrefixRepetition] == 0.0);
  CHECK(extract("caca.com")[kFPrefixRepetition] == 0.0);
  CHECK(extract("cacaca")[kFPrefixRepetition] == 1.0);  // "ca" * 3, suffixless

  // contains_tld_as_infix: a sub-domain label that is itself a suffix entry
  CHECK(extract("www.com.example.org")[kFContainsTldAsInfix] == 1.0);
  CHECK(extract("www.example.org")[kFContainsTldAsInfix] == 0.0);

  // contains_ipv4_addr needs four complete octets in range
  CHECK(extract("1.2.3.4.com")[kFContainsIpv4Addr] == 1.0);
  CHECK(extract("256.2.3.4.com")[kFContainsIpv4Addr] == 0.0);
  CHECK(extract("a1.2.3.4b.com")[kFContainsIpv4Addr] == 1.0);
  CHECK(extract("1234.5.6.7.com")[kFContainsIpv4Addr] == 0.0);
  CHECK(extract("10.0.0.255.in-addr.arpa")[kFContainsIpv4Addr] == 1.0);

  // underscore ratio on the DSF
  // dsf "dkim_domainkeyexample" has 21 characters, one underscore
  const RawFeatures dkim = extract("dkim._domainkey.example.com");
  CHECK(dkim[kFUnderscoreRatio] ==
        doctest::Approx(1.0 / 21.0).epsilon(1e-12));
}

TEST_CASE("feature CSV round trip") {
  const std::vector<std::string> domains = {"www.example.com", "a.com"};
  std::vector<RawFeatures> rows;
  for (const auto& d : domains) rows.push_back(extract(d));

  std::stringstream stream;
  write_feature_csv(stream, domains, rows);

  const FeatureCsv parsed = read_feature_csv(stream);
  REQUIRE(parsed.rows.size() == 2);
  CHECK(parsed.domains == domains);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    CHECK(parsed.rows[r].values == rows[r].values);  // exact round trip
  }
}

TEST_CASE("inference rules recover the true quantities on random domains") {
  // Full-scale version runs in the acceptance suite; this is a spot check.
  const auto psl = builtin_psl();
  const FeatureExtractor extractor(psl);
  SyntheticConfig cfg;
  cfg.seed = 99;
  cfg.size = 500;
  const auto set = generate_synthetic_source(cfg);
  std::size_t checked = 0;
  for (const auto& raw : set.domains) {
    const auto d = parse_domain(raw, psl);
    if (d.public_suffix.empty() || d.dsf.empty()) continue;
    const auto q = infer_quantities(extractor.extract_raw(d));
    std::size_t digits = 0, vowels = 0;
    for (char c : d.dsf) {
      if (c >= '0' && c <= '9') ++digits;
      if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') ++vowels;
    }
    CHECK(q.dsf_length == static_cast<long>(d.dsf.size()));
    CHECK(q.subdomain_count == static_cast<long>(d.subdomain_labels.size()));
    CHECK(q.suffix_length == static_cast<long>(d.public_suffix.size()));
    CHECK(q.digit_count == static_cast<long>(digits));
    CHECK(q.vowel_count == static_cast<long>(vowels));
    CHECK(q.other_count ==
          static_cast<long>(d.dsf.size() - digits - vowels));
    ++checked;
  }
  CHECK(checked > 400);
}
