#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

namespace fanci {

// Exact non-negative integer count. Thin wrapper over GMP that adds the
// decimal/scientific renderings the reports need.
class BigCount {
 public:
  BigCount() : value_(0) {}
  explicit BigCount(unsigned long v) : value_(v) {}
  explicit BigCount(const mpz_class& v) : value_(v) {}

  static BigCount binomial(unsigned long n, unsigned long k);
  // base^exp with 0^0 == 1.
  static BigCount pow(unsigned long base, unsigned long exp);
  static BigCount from_decimal_string(const std::string& digits);

  BigCount& operator+=(const BigCount& o) { value_ += o.value_; return *this; }
  BigCount& operator*=(const BigCount& o) { value_ *= o.value_; return *this; }
  friend BigCount operator+(BigCount a, const BigCount& b) { return a += b; }
  friend BigCount operator*(BigCount a, const BigCount& b) { return a *= b; }
  friend bool operator==(const BigCount& a, const BigCount& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const BigCount& a, const BigCount& b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(const BigCount& a, const BigCount& b) {
    return a.value_ <= b.value_;
  }

  bool is_zero() const { return value_ == 0; }
  std::string to_decimal_string() const;
  std::size_t digit_count() const;

  // value == digits * 10^(exponent - digits.size() + 1); trailing zeros of
  // the value are folded into the exponent so the pair round-trips exactly.
  struct DigitsExponent {
    std::string digits;
    long exponent = 0;
  };
  DigitsExponent digits_exponent() const;
  static BigCount from_digits_exponent(const DigitsExponent& de);

  // Rounded scientific rendering, e.g. {"3.55", 402} for 3 significant digits.
  struct Scientific {
    std::string mantissa;
    long exponent = 0;

    std::string to_string() const;  // "3.55e+402"
  };
  Scientific to_scientific(int significant_digits) const;

  // Scientific rendering of the exact ratio num/den (den > 0).
  static Scientific ratio_scientific(const BigCount& num, const BigCount& den,
                                     int significant_digits);

  const mpz_class& value() const { return value_; }

 private:
  mpz_class value_;
};

}  // namespace fanci
