#include <doctest.h>

#include "fanci/bigcount.hpp"
#include "fanci/rng.hpp"

using namespace fanci;

TEST_CASE("binomial and power basics") {
  CHECK(BigCount::binomial(9, 6).to_decimal_string() == "84");
  CHECK(BigCount::binomial(5, 0).to_decimal_string() == "1");
  CHECK(BigCount::binomial(3, 5).to_decimal_string() == "0");
  CHECK(BigCount::pow(0, 0).to_decimal_string() == "1");
  CHECK(BigCount::pow(0, 3).to_decimal_string() == "0");
  CHECK(BigCount::pow(2, 64).to_decimal_string() == "18446744073709551616");
}

TEST_CASE("scientific rendering rounds half up with carry") {
  CHECK(BigCount(35530ul).to_scientific(3).mantissa == "3.55");
  CHECK(BigCount(35530ul).to_scientific(3).exponent == 4);
  CHECK(BigCount(9996ul).to_scientific(3).mantissa == "1.00");
  CHECK(BigCount(9996ul).to_scientific(3).exponent == 4);
  CHECK(BigCount(5ul).to_scientific(3).mantissa == "5.00");
  CHECK(BigCount(5ul).to_scientific(3).exponent == 0);
  CHECK(BigCount(1311ul).to_scientific(4).to_string() == "1.311e+3");
}

TEST_CASE("ratio rendering") {
  const auto r =
      BigCount::ratio_scientific(BigCount(1ul), BigCount(3ul), 3);
  CHECK(r.mantissa == "3.33");
  CHECK(r.exponent == -1);
  const auto half = BigCount::ratio_scientific(BigCount(1ul), BigCount(2ul), 2);
  CHECK(half.mantissa == "5.0");
  CHECK(half.exponent == -1);
}

TEST_CASE("digits/exponent conversion round-trips") {
  SeededRng rng(3);
  for (int i = 0; i < 100; ++i) {
    // Random products spanning a wide digit range, trailing zeros included.
    BigCount v(1ul);
    const int factors = static_cast<int>(1 + rng.next_below(12));
    for (int k = 0; k < factors; ++k) {
      v *= BigCount(static_cast<unsigned long>(1 + rng.next_below(1000000)));
    }
    if (rng.next_below(3) == 0) {
      v *= BigCount::pow(10, rng.next_below(8));
    }
    const auto de = v.digits_exponent();
    CHECK(BigCount::from_digits_exponent(de) == v);
    CHECK(de.digits.back() != '0');
  }
  const auto zero = BigCount(0ul).digits_exponent();
  CHECK(zero.digits == "0");
  CHECK(BigCount::from_digits_exponent(zero).is_zero());
}
