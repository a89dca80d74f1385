#include "fanci/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "fanci/errors.hpp"
#include "fanci/rng.hpp"

namespace fanci {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

std::string strip(std::string s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw error(errc::io, "cannot open file: " + path.string());
  }
  return in;
}

}  // namespace

bool DomainSet::contains(const std::string& domain) const {
  return std::find(domains.begin(), domains.end(), domain) != domains.end();
}

DomainSet load_domains(const std::filesystem::path& path, std::string name,
                       LoadStats* stats) {
  std::ifstream in = open_or_throw(path);
  DomainSet set;
  set.name = name.empty() ? path.stem().string() : std::move(name);
  LoadStats local;
  std::unordered_set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = strip(std::move(line));
    if (line.empty()) continue;
    ++local.total_lines;
    std::string domain = lowercase(std::move(line));
    if (!is_valid_domain(domain)) {
      ++local.invalid_lines;
      continue;
    }
    if (!seen.insert(domain).second) {
      ++local.duplicate_lines;
      continue;
    }
    set.domains.push_back(std::move(domain));
  }
  if (stats) *stats = local;
  if (set.domains.empty()) {
    throw error(errc::all_lines_invalid,
                "no valid domains in " + path.string());
  }
  return set;
}

DomainSet load_dga_feed(const std::filesystem::path& path, std::string name,
                        LoadStats* stats) {
  std::ifstream in = open_or_throw(path);
  DomainSet set;
  set.name = std::move(name);
  LoadStats local;
  std::unordered_set<std::string> seen;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = strip(std::move(line));
    if (line.empty()) continue;
    ++local.total_lines;
    const std::string lowered = lowercase(line);
    if (first) {
      first = false;
      if (lowered == "domain,family") continue;
    }
    const auto comma = lowered.find(',');
    if (comma == std::string::npos) {
      ++local.invalid_lines;
      continue;
    }
    std::string domain = strip(lowered.substr(0, comma));
    std::string family = strip(lowered.substr(comma + 1));
    if (!is_valid_domain(domain)) {
      ++local.invalid_lines;
      continue;
    }
    if (!seen.insert(domain).second) {
      ++local.duplicate_lines;
      continue;
    }
    set.annotations.emplace(domain, std::move(family));
    set.domains.push_back(std::move(domain));
  }
  if (stats) *stats = local;
  if (set.domains.empty()) {
    throw error(errc::all_lines_invalid, "no valid entries in " + path.string());
  }
  return set;
}

void write_domain_file(const std::filesystem::path& path, const DomainSet& set) {
  std::ofstream out(path);
  if (!out) {
    throw error(errc::io, "cannot write file: " + path.string());
  }
  for (const auto& d : set.domains) {
    out << d << '\n';
  }
  if (!out) {
    throw error(errc::io, "write failed: " + path.string());
  }
}

DomainSet dedup_and_exclude(const DomainSet& benign,
                            const std::vector<DomainSet>& others,
                            const DomainSet& malicious) {
  std::unordered_set<std::string> excluded;
  for (const auto& other : others) {
    excluded.insert(other.domains.begin(), other.domains.end());
  }
  excluded.insert(malicious.domains.begin(), malicious.domains.end());

  DomainSet out;
  out.name = benign.name;
  for (const auto& d : benign.domains) {
    if (excluded.find(d) == excluded.end()) {
      out.domains.push_back(d);
    }
  }
  return out;
}

DomainSet subsample(const DomainSet& set, std::size_t k, std::uint64_t seed) {
  if (k > set.size()) {
    throw error(errc::k_too_large,
                "subsample size " + std::to_string(k) + " exceeds set size " +
                    std::to_string(set.size()));
  }
  std::vector<std::size_t> indices(set.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  SeededRng rng(mix_seed(seed, 1));
  rng.shuffle(indices);
  indices.resize(k);
  std::sort(indices.begin(), indices.end());

  DomainSet out;
  out.name = set.name;
  out.domains.reserve(k);
  for (std::size_t i : indices) {
    out.domains.push_back(set.domains[i]);
  }
  return out;
}

SplitResult split(const DomainSet& set, const SplitSpec& spec) {
  if (spec.test_fraction <= 0 || spec.test_fraction >= 1 ||
      spec.validation_fraction_of_train <= 0 ||
      spec.validation_fraction_of_train >= 1) {
    throw error(errc::bad_config, "split fractions must lie in (0,1)");
  }
  if (set.size() < 20) {
    throw error(errc::too_few_samples,
                "need at least 20 samples to split, have " +
                    std::to_string(set.size()));
  }
  const std::size_t n = set.size();
  const std::size_t n_test = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * spec.test_fraction + 0.5));
  const std::size_t n_val = static_cast<std::size_t>(std::floor(
      static_cast<double>(n - n_test) * spec.validation_fraction_of_train +
      0.5));

  std::vector<std::size_t> indices(n);
  for (std::size_t i = 0; i < n; ++i) indices[i] = i;
  SeededRng rng(mix_seed(spec.seed, 2));
  rng.shuffle(indices);

  std::vector<int> role(n, 0);  // 0 train, 1 validation, 2 test
  for (std::size_t i = 0; i < n_test; ++i) role[indices[i]] = 2;
  for (std::size_t i = n_test; i < n_test + n_val; ++i) role[indices[i]] = 1;

  SplitResult result;
  result.train.name = set.name + ".train";
  result.validation.name = set.name + ".validation";
  result.test.name = set.name + ".test";
  for (std::size_t i = 0; i < n; ++i) {
    switch (role[i]) {
      case 0: result.train.domains.push_back(set.domains[i]); break;
      case 1: result.validation.domains.push_back(set.domains[i]); break;
      default: result.test.domains.push_back(set.domains[i]); break;
    }
  }
  return result;
}

SyntheticConfig SyntheticConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  SyntheticConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = strip(std::move(line));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw error(errc::bad_config, "expected 'key = value' at line " +
                                        std::to_string(line_no));
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    const auto parse_double = [&](double& out) {
      const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
      if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw error(errc::bad_config, "bad number for " + key + ": " + value);
      }
    };
    if (key == "seed") {
      std::uint64_t v = 0;
      const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
      if (res.ec != std::errc()) {
        throw error(errc::bad_config, "bad seed: " + value);
      }
      cfg.seed = v;
    } else if (key == "size") {
      std::size_t v = 0;
      const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
      if (res.ec != std::errc()) {
        throw error(errc::bad_config, "bad size: " + value);
      }
      cfg.size = v;
    } else if (key == "weight_typo") {
      parse_double(cfg.weight_typo);
    } else if (key == "weight_reverse_lookup") {
      parse_double(cfg.weight_reverse_lookup);
    } else if (key == "weight_service") {
      parse_double(cfg.weight_service);
    } else if (key == "weight_random_label") {
      parse_double(cfg.weight_random_label);
    } else if (key == "wordlist") {
      cfg.wordlist_path = value;
    } else {
      throw error(errc::bad_config, "unknown config key: " + key);
    }
  }
  return cfg;
}

const std::vector<std::string>& default_wordlist() {
  static const std::vector<std::string> words = {
      "example.com",    "google.com",     "facebook.com",  "youtube.com",
      "wikipedia.org",  "amazon.com",     "twitter.com",   "instagram.com",
      "linkedin.com",   "netflix.com",    "microsoft.com", "apple.com",
      "github.com",     "stackoverflow.com", "reddit.com", "wordpress.org",
      "mozilla.org",    "adobe.com",      "paypal.com",    "dropbox.com",
      "spotify.com",    "ebay.com",       "cloudflare.com", "salesforce.com",
      "oracle.com",     "ibm.com",        "intel.com",     "cisco.com",
      "heise.de",       "spiegel.de",     "zeit.de",       "gmx.de",
      "web.de",         "telekom.de",     "seznam.cz",     "idnes.cz",
      "novinky.cz",     "centrum.cz",     "bbc.co.uk",     "guardian.co.uk",
      "cam.ac.uk",      "ox.ac.uk",       "lemonde.fr",    "orange.fr",
      "corriere.it",    "repubblica.it",  "nu.nl",         "bol.com",
      "allegro.pl",     "onet.pl",        "yandex.ru",     "mail.ru",
      "weather.com",    "booking.com",    "airbnb.com",    "uber.com",
      "slack.com",      "zoom.us",        "office.com",    "live.com",
      "bing.com",       "duckduckgo.com", "archive.org",   "gnu.org",
      "kernel.org",     "debian.org",     "ubuntu.com",    "python.org",
      "rust-lang.org",  "cppreference.com", "arxiv.org",   "nature.com",
      "sciencedirect.com", "springer.com", "ieee.org",     "acm.org",
      "whatsapp.com",   "telegram.org",   "signal.org",    "discord.com",
      "twitch.tv",      "vimeo.com",      "flickr.com",    "pinterest.com",
      "tumblr.com",     "medium.com",     "quora.com",     "yelp.com",
      "tripadvisor.com", "imdb.com",      "espn.com",      "cnn.com",
      "nytimes.com",    "washingtonpost.com", "reuters.com", "bloomberg.com",
  };
  return words;
}

const std::vector<std::string>& builtin_psl_entries() {
  static const std::vector<std::string> entries = {
      "com",  "net",   "org",   "info", "biz",  "edu",   "gov",   "arpa",
      "in-addr.arpa",  "ip6.arpa",      "de",   "cz",    "uk",    "co.uk",
      "ac.uk", "org.uk", "fr",   "it",  "nl",   "pl",    "ru",    "us",
      "eu",   "io",    "tv",    "me",
  };
  return entries;
}

PublicSuffixList builtin_psl() {
  return PublicSuffixList::from_entries(builtin_psl_entries());
}

namespace {

constexpr char kAlnum[] = "abcdefghijklmnopqrstuvwxyz0123456789";
constexpr char kHexDigits[] = "0123456789abcdef";

const std::vector<std::string>& generator_tlds() {
  static const std::vector<std::string> tlds = {
      "com", "net", "org", "de", "cz", "io", "info", "co.uk",
  };
  return tlds;
}

std::string typo_domain(SeededRng& rng, const std::vector<std::string>& words) {
  std::string base = words[rng.next_below(words.size())];
  if (rng.next_unit() < 0.25) base = "www." + base;
  const std::size_t n = base.size();
  switch (rng.next_below(4)) {
    case 0:  // deletion
      base.erase(rng.next_below(n), 1);
      break;
    case 1:  // insertion
      base.insert(base.begin() + static_cast<long>(rng.next_below(n + 1)),
                  kAlnum[rng.next_below(36)]);
      break;
    case 2:  // substitution
      base[rng.next_below(n)] = kAlnum[rng.next_below(36)];
      break;
    default: {  // adjacent transposition
      if (n >= 2) {
        const std::size_t i = rng.next_below(n - 1);
        std::swap(base[i], base[i + 1]);
      }
      break;
    }
  }
  return base;
}

std::string reverse_lookup_domain(SeededRng& rng) {
  std::string out;
  if (rng.next_unit() < 0.8) {
    for (int i = 0; i < 4; ++i) {
      out += std::to_string(rng.next_below(256));
      out += '.';
    }
    out += "in-addr.arpa";
  } else {
    // Partial prefix delegations: 8..16 nibble labels.
    const std::size_t nibbles = 8 + rng.next_below(9);
    for (std::size_t i = 0; i < nibbles; ++i) {
      out += kHexDigits[rng.next_below(16)];
      out += '.';
    }
    out += "ip6.arpa";
  }
  return out;
}

std::string first_label(const std::string& domain) {
  return domain.substr(0, domain.find('.'));
}

std::string service_domain(SeededRng& rng, const std::vector<std::string>& words) {
  const std::string word = first_label(words[rng.next_below(words.size())]);
  const std::string& tld = generator_tlds()[rng.next_below(generator_tlds().size())];
  const std::uint64_t num = rng.next_below(100);
  switch (rng.next_below(7)) {
    case 0: return "dnsbl." + word + "." + tld;
    case 1: return "spam." + word + "." + tld;
    case 2: return "rbl." + word + "." + tld;
    case 3: return "mx" + std::to_string(num) + "." + word + "." + tld;
    case 4: return "dkim._domainkey." + word + "." + tld;
    case 5: return "bl." + std::to_string(num) + "." + word + "." + tld;
    default: return "_dmarc." + word + "." + tld;
  }
}

std::string random_label_domain(SeededRng& rng) {
  const std::size_t labels = 1 + rng.next_below(2);
  std::string out;
  for (std::size_t l = 0; l < labels; ++l) {
    const std::size_t len = 5 + rng.next_below(12);
    for (std::size_t i = 0; i < len; ++i) {
      // Occasional interior hyphen.
      if (i > 0 && i + 1 < len && rng.next_unit() < 0.04) {
        out += '-';
      } else {
        out += kAlnum[rng.next_below(36)];
      }
    }
    out += '.';
  }
  out += generator_tlds()[rng.next_below(generator_tlds().size())];
  return out;
}

}  // namespace

DomainSet generate_synthetic_source(const SyntheticConfig& config,
                                    std::string name) {
  if (config.size == 0) {
    throw error(errc::bad_config, "synthetic size must be positive");
  }
  const double total_weight = config.weight_typo + config.weight_reverse_lookup +
                              config.weight_service + config.weight_random_label;
  if (total_weight <= 0 || config.weight_typo < 0 ||
      config.weight_reverse_lookup < 0 || config.weight_service < 0 ||
      config.weight_random_label < 0) {
    throw error(errc::bad_config, "generator weights must be non-negative");
  }

  std::vector<std::string> words;
  if (config.wordlist_path.empty()) {
    words = default_wordlist();
  } else {
    const DomainSet list = load_domains(config.wordlist_path, "wordlist");
    words = list.domains;
  }
  const bool needs_words = config.weight_typo > 0 || config.weight_service > 0;
  if (needs_words && words.empty()) {
    throw error(errc::empty_wordlist, "typo generator requires a wordlist");
  }

  const double w_typo = config.weight_typo / total_weight;
  const double w_reverse = w_typo + config.weight_reverse_lookup / total_weight;
  const double w_service = w_reverse + config.weight_service / total_weight;

  DomainSet out;
  out.name = std::move(name);
  out.domains.reserve(config.size);
  std::unordered_set<std::string> seen;

  // Hard stop so an unreachable size (tiny wordlist, huge request) fails
  // instead of spinning.
  const std::uint64_t max_attempts =
      std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(config.size) * 1000);
  for (std::uint64_t index = 0;
       out.domains.size() < config.size && index < max_attempts; ++index) {
    SeededRng rng(mix_seed(config.seed, index));
    const double pick = rng.next_unit();
    std::string domain;
    if (pick < w_typo) {
      domain = typo_domain(rng, words);
    } else if (pick < w_reverse) {
      domain = reverse_lookup_domain(rng);
    } else if (pick < w_service) {
      domain = service_domain(rng, words);
    } else {
      domain = random_label_domain(rng);
    }
    if (!is_valid_domain(domain)) continue;
    if (seen.insert(domain).second) {
      out.domains.push_back(std::move(domain));
    }
  }
  if (out.domains.size() < config.size) {
    throw error(errc::bad_config,
                "could not generate " + std::to_string(config.size) +
                    " unique domains (got " + std::to_string(out.domains.size()) +
                    ")");
  }
  return out;
}

}  // namespace fanci
