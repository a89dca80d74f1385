#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fanci/domain.hpp"
#include "fanci/errors.hpp"
#include "fanci/rng.hpp"
#include "support/test_support.hpp"

using namespace fanci;
using fanci::testing::random_valid_domain;
using fanci::testing::test_psl;

TEST_CASE("symbol table layout") {
  CHECK(symbol_index('a') == 0);
  CHECK(symbol_index('z') == 25);
  CHECK(symbol_index('0') == 26);
  CHECK(symbol_index('9') == 35);
  CHECK(symbol_index('.') == 36);
  CHECK(symbol_index('-') == 37);
  CHECK(symbol_index('_') == 38);
  CHECK(symbol_index('A') == -1);
  CHECK(symbol_index(' ') == -1);
  for (int i = 0; i < kDomainAlphabetSize; ++i) {
    CHECK(symbol_index(index_symbol(i)) == i);
  }
}

TEST_CASE("parse_domain strips the longest suffix") {
  const auto psl = test_psl();

  const auto d = parse_domain("www.example.com", psl);
  CHECK(d.labels == std::vector<std::string>{"www", "example", "com"});
  CHECK(d.public_suffix == "com");
  CHECK(d.subdomain_labels == std::vector<std::string>{"www", "example"});
  CHECK(d.dsf == "wwwexample");

  // Longest match wins when both co.uk and uk are entries.
  const auto e = parse_domain("a.co.uk", psl);
  CHECK(e.public_suffix == "co.uk");
  CHECK(e.dsf == "a");

  const auto f = parse_domain("abcd", psl);
  CHECK(f.labels == std::vector<std::string>{"abcd"});
  CHECK(f.public_suffix.empty());
  CHECK(f.dsf == "abcd");

  // Domain equal to a suffix entry: empty DSF.
  const auto g = parse_domain("co.uk", psl);
  CHECK(g.public_suffix == "co.uk");
  CHECK(g.subdomain_labels.empty());
  CHECK(g.dsf.empty());
}

TEST_CASE("parse_domain lowercases instead of rejecting") {
  const auto psl = test_psl();
  const auto d = parse_domain("WWW.Example.COM", psl);
  CHECK(d.raw == "www.example.com");
  CHECK(d.public_suffix == "com");
}

TEST_CASE("parse_domain rejects malformed input") {
  const auto psl = test_psl();
  CHECK_THROWS_AS(parse_domain("a..b.com", psl), error);
  CHECK_THROWS_AS(parse_domain(".a.com", psl), error);
  CHECK_THROWS_AS(parse_domain("a.com.", psl), error);
  CHECK_THROWS_AS(parse_domain("abc", psl), error);  // below minimum length
  CHECK_THROWS_AS(parse_domain("ab*d.com", psl), error);
  CHECK_THROWS_AS(parse_domain(std::string(254, 'a'), psl), error);
  CHECK_THROWS_AS(parse_domain("", psl), error);

  CHECK(try_parse_domain("a..b.com", psl) == std::nullopt);
  CHECK(try_parse_domain("abcd", psl).has_value());
}

TEST_CASE("parse round trip: labels joined with dots reproduce raw") {
  const auto psl = test_psl();
  SeededRng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const std::string raw = random_valid_domain(rng);
    const auto d = parse_domain(raw, psl);
    std::string joined;
    for (std::size_t l = 0; l < d.labels.size(); ++l) {
      if (l > 0) joined += '.';
      joined += d.labels[l];
    }
    CHECK(joined == d.raw);
    CHECK(d.dsf.find('.') == std::string::npos);
  }
}

TEST_CASE("encode_domain layout and overflow") {
  const auto psl = test_psl();
  const auto d = parse_domain("ab.c", psl);
  const auto seq = encode_domain(d, 8);
  CHECK(seq.tokens == std::vector<int>{kStartToken, 0, 1, 36, 2, kEndToken,
                                       kPadToken, kPadToken});

  // 253 characters need 255 tokens.
  const std::string long_raw = std::string(249, 'a') + ".com";
  REQUIRE(long_raw.size() == 253);
  const auto big = parse_domain(long_raw, psl);
  CHECK_THROWS_AS(encode_domain(big, 253), error);
  CHECK(encode_domain(big, 255).tokens.size() == 255);
}

TEST_CASE("decode_tokens conventions") {
  CHECK(decode_tokens({{kStartToken, 0, kEndToken}}) == "a");
  CHECK(decode_tokens({{kStartToken, kEndToken}}) == "");
  CHECK(decode_tokens({{0, 1}}) == "");  // no START
  CHECK(decode_tokens({{kStartToken, 0, kPadToken, 1, kEndToken, 2}}) == "ab");
  CHECK(decode_tokens({{kStartToken, 0, 1}}) == "ab");  // no END: run to the end
}

TEST_CASE("encode/decode are mutually inverse on random domains") {
  const auto psl = test_psl();
  SeededRng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto d = parse_domain(random_valid_domain(rng), psl);
    CHECK(decode_tokens(encode_domain(d, 255)) == d.raw);
  }
}

TEST_CASE("suffix list file parsing") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "fanci_test_psl.txt";
  {
    std::ofstream out(path);
    out << "# comment line\n"
        << "com\n"
        << "  co.uk   # trailing comment\n"
        << "\n"
        << "UK\n";
  }
  const auto psl = PublicSuffixList::from_file(path);
  CHECK(psl.size() == 3);
  CHECK(psl.contains("com"));
  CHECK(psl.contains("co.uk"));
  CHECK(psl.contains("uk"));
  CHECK(psl.count_entries_of_length(2) == 1);
  CHECK(psl.count_entries_of_length(5) == 1);
  CHECK(psl.count_entries_of_length(9) == 0);
  fs::remove(path);
}
