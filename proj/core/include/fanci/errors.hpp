#pragma once

#include <stdexcept>
#include <string>

namespace fanci {

// Coarse failure classes, used by the CLI to pick exit codes.
enum class errc {
  invalid_domain,
  encoding_overflow,
  inconsistent_features,
  dimension_mismatch,
  divergence,
  io,
  usage,
  all_lines_invalid,
  k_too_large,
  too_few_samples,
  empty_wordlist,
  bad_config,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

const char* errc_name(errc code) noexcept;

}  // namespace fanci
