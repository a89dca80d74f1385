#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace fanci {

// Domain names are strings over 39 symbols: a-z, 0-9, '.', '-', '_'.
// Token indices extend the alphabet with sequence markers:
//   a-z -> 0..25, 0-9 -> 26..35, '.' -> 36, '-' -> 37, '_' -> 38,
//   START -> 39, END -> 40, PAD -> 41.
inline constexpr int kDomainAlphabetSize = 39;
inline constexpr int kVocabSize = 42;
inline constexpr int kStartToken = 39;
inline constexpr int kEndToken = 40;
inline constexpr int kPadToken = 41;

inline constexpr std::size_t kMinDomainLength = 4;
inline constexpr std::size_t kMaxDomainLength = 253;

// -1 for characters outside the domain alphabet.
int symbol_index(char c) noexcept;
// '\0' for indices that are not domain characters (markers included).
char index_symbol(int index) noexcept;

class PublicSuffixList {
 public:
  PublicSuffixList() = default;

  // One suffix per line, '#' starts a comment, blank lines ignored.
  static PublicSuffixList from_file(const std::filesystem::path& path);
  static PublicSuffixList from_entries(const std::vector<std::string>& entries);

  bool contains(std::string_view suffix) const;
  std::size_t size() const { return entries_.size(); }

  // Number of entries whose string length is exactly `length` (the paper's
  // t_f: suffix candidates once the suffix length is inferred).
  std::size_t count_entries_of_length(std::size_t length) const;

  const std::unordered_set<std::string>& entries() const { return entries_; }

 private:
  std::unordered_set<std::string> entries_;
};

struct DomainName {
  std::string raw;                            // lowercased input
  std::vector<std::string> labels;            // raw split at '.'
  std::string public_suffix;                  // longest PSL match, may be empty
  std::vector<std::string> subdomain_labels;  // labels minus suffix labels
  std::string dsf;                            // subdomain labels joined, no dots
};

struct TokenSequence {
  std::vector<int> tokens;
};

// Validity is independent of any suffix list: length in [4, 253], all
// characters in the 39-symbol alphabet, no empty labels.
bool is_valid_domain(std::string_view raw) noexcept;

// Lowercases, validates, and strips the longest matching public suffix.
// Throws error(errc::invalid_domain) on malformed input.
DomainName parse_domain(std::string_view raw, const PublicSuffixList& psl);
std::optional<DomainName> try_parse_domain(std::string_view raw,
                                           const PublicSuffixList& psl);

// START + characters + END, padded with PAD to max_len.
// Throws error(errc::encoding_overflow) if raw length + 2 > max_len.
TokenSequence encode_domain(const DomainName& domain, std::size_t max_len);

// Characters between the first START and the first END (or the end of the
// sequence); non-character tokens inside are skipped. No START yields "".
std::string decode_tokens(const TokenSequence& sequence);

}  // namespace fanci
