#include "fanci/domain.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "fanci/errors.hpp"

namespace fanci {

namespace {

constexpr std::array<char, kDomainAlphabetSize> make_symbol_table() {
  std::array<char, kDomainAlphabetSize> table{};
  int i = 0;
  for (char c = 'a'; c <= 'z'; ++c) table[i++] = c;
  for (char c = '0'; c <= '9'; ++c) table[i++] = c;
  table[i++] = '.';
  table[i++] = '-';
  table[i++] = '_';
  return table;
}

constexpr std::array<char, kDomainAlphabetSize> kSymbols = make_symbol_table();

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::vector<std::string> split_labels(std::string_view raw) {
  std::vector<std::string> labels;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = raw.find('.', start);
    if (dot == std::string_view::npos) {
      labels.emplace_back(raw.substr(start));
      break;
    }
    labels.emplace_back(raw.substr(start, dot - start));
    start = dot + 1;
  }
  return labels;
}

}  // namespace

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::invalid_domain: return "invalid-domain";
    case errc::encoding_overflow: return "encoding-overflow";
    case errc::inconsistent_features: return "inconsistent-features";
    case errc::dimension_mismatch: return "dimension-mismatch";
    case errc::divergence: return "divergence";
    case errc::io: return "io-error";
    case errc::usage: return "usage-error";
    case errc::all_lines_invalid: return "all-lines-invalid";
    case errc::k_too_large: return "k-too-large";
    case errc::too_few_samples: return "too-few-samples";
    case errc::empty_wordlist: return "empty-wordlist";
    case errc::bad_config: return "bad-config";
  }
  return "error";
}

int symbol_index(char c) noexcept {
  if (c >= 'a' && c <= 'z') return c - 'a';
  if (c >= '0' && c <= '9') return 26 + (c - '0');
  if (c == '.') return 36;
  if (c == '-') return 37;
  if (c == '_') return 38;
  return -1;
}

char index_symbol(int index) noexcept {
  if (index < 0 || index >= kDomainAlphabetSize) return '\0';
  return kSymbols[static_cast<std::size_t>(index)];
}

PublicSuffixList PublicSuffixList::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw error(errc::io, "cannot open suffix list: " + path.string());
  }
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t begin = line.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    entries.push_back(line.substr(begin));
  }
  return from_entries(entries);
}

PublicSuffixList PublicSuffixList::from_entries(
    const std::vector<std::string>& entries) {
  PublicSuffixList psl;
  for (const auto& raw : entries) {
    const std::string entry = lowercase(raw);
    if (entry.empty()) continue;
    bool ok = true;
    bool prev_dot = true;  // leading dot counts as an empty label
    for (char c : entry) {
      if (c == '.') {
        if (prev_dot) { ok = false; break; }
        prev_dot = true;
      } else if (symbol_index(c) < 0) {
        ok = false;
        break;
      } else {
        prev_dot = false;
      }
    }
    if (!ok || prev_dot) {
      throw error(errc::bad_config, "malformed suffix entry: " + raw);
    }
    psl.entries_.insert(entry);
  }
  return psl;
}

bool PublicSuffixList::contains(std::string_view suffix) const {
  return entries_.find(std::string(suffix)) != entries_.end();
}

std::size_t PublicSuffixList::count_entries_of_length(std::size_t length) const {
  std::size_t n = 0;
  for (const auto& e : entries_) {
    if (e.size() == length) ++n;
  }
  return n;
}

bool is_valid_domain(std::string_view raw) noexcept {
  if (raw.size() < kMinDomainLength || raw.size() > kMaxDomainLength) {
    return false;
  }
  bool prev_dot = true;  // catches a leading dot
  for (char c : raw) {
    if (c == '.') {
      if (prev_dot) return false;
      prev_dot = true;
    } else if (symbol_index(c) < 0) {
      return false;
    } else {
      prev_dot = false;
    }
  }
  return !prev_dot;  // catches a trailing dot
}

DomainName parse_domain(std::string_view raw, const PublicSuffixList& psl) {
  std::string lowered = lowercase(raw);
  if (!is_valid_domain(lowered)) {
    throw error(errc::invalid_domain, "invalid domain: " + std::string(raw));
  }

  DomainName d;
  d.raw = std::move(lowered);
  d.labels = split_labels(d.raw);

  // Longest suffix match on a label boundary; scanning from the leftmost
  // label means the first hit is the longest one.
  std::size_t suffix_labels = 0;
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    std::string candidate;
    for (std::size_t j = i; j < d.labels.size(); ++j) {
      if (j > i) candidate += '.';
      candidate += d.labels[j];
    }
    if (psl.contains(candidate)) {
      d.public_suffix = std::move(candidate);
      suffix_labels = d.labels.size() - i;
      break;
    }
  }

  d.subdomain_labels.assign(d.labels.begin(),
                            d.labels.end() - static_cast<long>(suffix_labels));
  for (const auto& label : d.subdomain_labels) {
    d.dsf += label;
  }
  return d;
}

std::optional<DomainName> try_parse_domain(std::string_view raw,
                                           const PublicSuffixList& psl) {
  std::string lowered = lowercase(raw);
  if (!is_valid_domain(lowered)) return std::nullopt;
  return parse_domain(lowered, psl);
}

TokenSequence encode_domain(const DomainName& domain, std::size_t max_len) {
  if (domain.raw.size() + 2 > max_len) {
    throw error(errc::encoding_overflow,
                "domain does not fit in " + std::to_string(max_len) +
                    " tokens: " + domain.raw);
  }
  TokenSequence seq;
  seq.tokens.reserve(max_len);
  seq.tokens.push_back(kStartToken);
  for (char c : domain.raw) {
    seq.tokens.push_back(symbol_index(c));
  }
  seq.tokens.push_back(kEndToken);
  seq.tokens.resize(max_len, kPadToken);
  return seq;
}

std::string decode_tokens(const TokenSequence& sequence) {
  const auto& t = sequence.tokens;
  auto it = std::find(t.begin(), t.end(), kStartToken);
  if (it == t.end()) return "";
  std::string out;
  for (++it; it != t.end() && *it != kEndToken; ++it) {
    if (*it >= 0 && *it < kDomainAlphabetSize) {
      out += index_symbol(*it);
    }
  }
  return out;
}

}  // namespace fanci
