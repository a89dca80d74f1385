#include "fanci/bigcount.hpp"

#include <stdexcept>

#include "fanci/errors.hpp"

namespace fanci {

namespace {

// Round a digit string to `sig` digits (half-up). Returns the rounded digits
// and how many positions the leading digit shifted (0 or 1, e.g. 996 -> 10).
std::pair<std::string, int> round_digits(const std::string& digits, int sig) {
  if (static_cast<int>(digits.size()) <= sig) {
    std::string padded = digits;
    padded.append(static_cast<std::size_t>(sig) - digits.size(), '0');
    return {padded, 0};
  }
  std::string head = digits.substr(0, static_cast<std::size_t>(sig));
  const bool round_up = digits[static_cast<std::size_t>(sig)] >= '5';
  if (round_up) {
    int i = sig - 1;
    while (i >= 0) {
      if (head[static_cast<std::size_t>(i)] != '9') {
        ++head[static_cast<std::size_t>(i)];
        break;
      }
      head[static_cast<std::size_t>(i)] = '0';
      --i;
    }
    if (i < 0) {
      head.insert(head.begin(), '1');
      head.pop_back();
      return {head, 1};
    }
  }
  return {head, 0};
}

BigCount::Scientific make_scientific(const std::string& digits, long exponent,
                                     int sig) {
  auto [mantissa_digits, shift] = round_digits(digits, sig);
  BigCount::Scientific s;
  s.exponent = exponent + shift;
  s.mantissa = mantissa_digits.substr(0, 1);
  if (sig > 1) {
    s.mantissa += '.';
    s.mantissa += mantissa_digits.substr(1);
  }
  return s;
}

}  // namespace

BigCount BigCount::binomial(unsigned long n, unsigned long k) {
  if (k > n) return BigCount(0ul);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return BigCount(r);
}

BigCount BigCount::pow(unsigned long base, unsigned long exp) {
  mpz_class r;
  mpz_class b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
  return BigCount(r);
}

BigCount BigCount::from_decimal_string(const std::string& digits) {
  try {
    mpz_class v(digits, 10);
    if (v < 0) throw std::invalid_argument("negative");
    return BigCount(v);
  } catch (const std::invalid_argument&) {
    throw error(errc::bad_config, "not a decimal count: " + digits);
  }
}

std::string BigCount::to_decimal_string() const {
  return value_.get_str(10);
}

std::size_t BigCount::digit_count() const {
  return to_decimal_string().size();
}

BigCount::DigitsExponent BigCount::digits_exponent() const {
  DigitsExponent de;
  std::string s = to_decimal_string();
  de.exponent = static_cast<long>(s.size()) - 1;
  std::size_t last = s.find_last_not_of('0');
  if (last == std::string::npos) {
    de.digits = "0";
    de.exponent = 0;
  } else {
    de.digits = s.substr(0, last + 1);
  }
  return de;
}

BigCount BigCount::from_digits_exponent(const DigitsExponent& de) {
  mpz_class v(de.digits, 10);
  const long zeros = de.exponent - static_cast<long>(de.digits.size()) + 1;
  if (zeros < 0) {
    throw error(errc::bad_config, "digits/exponent pair is not an integer");
  }
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(zeros));
  return BigCount(mpz_class(v * scale));
}

std::string BigCount::Scientific::to_string() const {
  return mantissa + "e+" + std::to_string(exponent);
}

BigCount::Scientific BigCount::to_scientific(int significant_digits) const {
  const std::string s = to_decimal_string();
  return make_scientific(s, static_cast<long>(s.size()) - 1, significant_digits);
}

BigCount::Scientific BigCount::ratio_scientific(const BigCount& num,
                                                const BigCount& den,
                                                int significant_digits) {
  if (den.is_zero()) {
    throw error(errc::bad_config, "ratio with zero denominator");
  }
  if (num.is_zero()) {
    Scientific s;
    s.mantissa = "0";
    return s;
  }
  // Scale the numerator so the integer quotient carries a few guard digits.
  const int guard = significant_digits + 2;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(guard));
  const mpz_class q = (num.value_ * scale) / den.value_;
  const std::string digits = q.get_str(10);
  const long exponent = static_cast<long>(digits.size()) - 1 - guard;
  return make_scientific(digits, exponent, significant_digits);
}

}  // namespace fanci
