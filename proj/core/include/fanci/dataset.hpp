#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "fanci/domain.hpp"

namespace fanci {

// Ordered set of unique, valid domain strings.
struct DomainSet {
  std::string name;
  std::vector<std::string> domains;
  // Optional per-domain annotation (DGA family for feed data).
  std::unordered_map<std::string, std::string> annotations;

  std::size_t size() const { return domains.size(); }
  bool contains(const std::string& domain) const;
};

struct LoadStats {
  std::size_t total_lines = 0;
  std::size_t invalid_lines = 0;
  std::size_t duplicate_lines = 0;
};

// One domain per line, '#' comments, blank lines ignored; lines are
// lowercased, validated, and deduplicated (first occurrence wins). Throws
// error(errc::io) if the file cannot be read and
// error(errc::all_lines_invalid) if nothing valid remains.
DomainSet load_domains(const std::filesystem::path& path,
                       std::string name = {}, LoadStats* stats = nullptr);

// "domain,family" CSV (header line "domain,family" skipped); malformed or
// invalid lines are counted and skipped; duplicate domains keep the first
// family.
DomainSet load_dga_feed(const std::filesystem::path& path,
                        std::string name = "dga", LoadStats* stats = nullptr);

void write_domain_file(const std::filesystem::path& path, const DomainSet& set);

// benign minus every other set and minus malicious, original order kept.
DomainSet dedup_and_exclude(const DomainSet& benign,
                            const std::vector<DomainSet>& others,
                            const DomainSet& malicious);

// Uniform k-subset, original order kept; deterministic per seed.
// Throws error(errc::k_too_large) if k exceeds the set size.
DomainSet subsample(const DomainSet& set, std::size_t k, std::uint64_t seed);

struct SplitSpec {
  double test_fraction = 0.20;
  double validation_fraction_of_train = 0.05;
  std::uint64_t seed = 0;
};

struct SplitResult {
  DomainSet train;
  DomainSet validation;
  DomainSet test;
};

// Disjoint and exhaustive; test first, then validation from the remainder.
// Requires at least 20 samples.
SplitResult split(const DomainSet& set, const SplitSpec& spec);

enum class SyntheticKind { typo, reverse_lookup, service_misconfig, random_label };

struct SyntheticConfig {
  std::uint64_t seed = 0;
  std::size_t size = 0;
  double weight_typo = 0.25;
  double weight_reverse_lookup = 0.25;
  double weight_service = 0.25;
  double weight_random_label = 0.25;
  std::string wordlist_path;  // empty: use the built-in list

  // "key = value" lines, '#' comments.
  static SyntheticConfig from_file(const std::filesystem::path& path);
};

// Embedded fallback corpus for the typo/service generators.
const std::vector<std::string>& default_wordlist();

// Small suffix list covering the generators' TLDs plus the reverse-lookup
// zones; used by the CLI when no --psl file is given.
const std::vector<std::string>& builtin_psl_entries();
PublicSuffixList builtin_psl();

// Deterministic per (seed, index): index i derives its own RNG stream, so
// the output is reproducible and generation could be sharded by index.
DomainSet generate_synthetic_source(const SyntheticConfig& config,
                                    std::string name = "synthetic");

}  // namespace fanci
