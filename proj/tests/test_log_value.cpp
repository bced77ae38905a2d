#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bht/log_value.hpp"

using bht::LogValue;

TEST_CASE("round-trips magnitudes far below double range") {
  LogValue tiny = LogValue::from_ln(-10000.0);
  CHECK(!tiny.is_zero());
  CHECK(tiny.ln() == doctest::Approx(-10000.0));
  CHECK(tiny.log10() == doctest::Approx(-10000.0 / std::log(10.0)));

  LogValue sum = tiny + tiny;
  CHECK(sum.ln() == doctest::Approx(-10000.0 + std::log(2.0)));
}

TEST_CASE("zero element behaves additively and multiplicatively") {
  LogValue z = LogValue::zero();
  LogValue x = LogValue::from_linear(0.25);
  CHECK((z + x).ln() == doctest::Approx(std::log(0.25)));
  CHECK((x + z).ln() == doctest::Approx(std::log(0.25)));
  CHECK((z * x).is_zero());
  CHECK(LogValue::from_linear(0.0).is_zero());
  CHECK(LogValue::sub(x, x).is_zero());
  CHECK(LogValue::sub(x, z).ln() == x.ln());
}

TEST_CASE("sub requires minuend >= subtrahend") {
  LogValue a = LogValue::from_linear(0.125);
  LogValue b = LogValue::from_linear(0.5);
  CHECK_THROWS_AS((void)LogValue::sub(a, b), bht::Error);
  CHECK(LogValue::sub(b, a).linear() == doctest::Approx(0.375));
}

TEST_CASE("agrees with long double arithmetic on random moderate values") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(1e-12, 1.0);
  for (int i = 0; i < 1000; ++i) {
    double x = u(gen), y = u(gen);
    LogValue lx = LogValue::from_linear(x), ly = LogValue::from_linear(y);
    long double sum = static_cast<long double>(x) + y;
    long double prod = static_cast<long double>(x) * y;
    CHECK((lx + ly).ln() ==
          doctest::Approx(static_cast<double>(std::log(sum))).epsilon(1e-13));
    CHECK((lx * ly).ln() ==
          doctest::Approx(static_cast<double>(std::log(prod))).epsilon(1e-13));
    if (x >= y) {
      long double diff = static_cast<long double>(x) - y;
      if (diff > 0)
        CHECK(LogValue::sub(lx, ly).ln() ==
              doctest::Approx(static_cast<double>(std::log(diff))).epsilon(1e-9));
    }
  }
}

TEST_CASE("scientific formatting from the log10 representation") {
  // value far below DBL_MIN must keep its digits
  LogValue v = LogValue::from_ln(-316.0 * std::log(10.0) + std::log(9.544));
  std::string s = bht::sci_string(v, 5);
  CHECK(s == "9.5440e-316");
  CHECK(bht::sci_string(LogValue::zero()) == "0");
  CHECK(bht::sci_string(LogValue::one(), 6) == "1.00000e+000");

  // mantissa rounding that carries into the exponent
  std::string carried = bht::sci_from_log10(std::log10(9.9999999e-5), 6);
  CHECK(carried == "1.00000e-004");
}

TEST_CASE("sci round-trip preserves log10") {
  for (double l10 : {-316.02, -444.9, -3.07, 0.0, 12.25, -1234.5}) {
    std::string s = bht::sci_from_log10(l10, 9);
    CHECK(bht::log10_from_sci(s) == doctest::Approx(l10).epsilon(1e-8));
  }
  CHECK(std::isinf(bht::log10_from_sci("0")));
}

TEST_CASE("pow scales the exponent") {
  LogValue v = LogValue::from_linear(0.5);
  CHECK(v.pow(100.0).ln() == doctest::Approx(100.0 * std::log(0.5)));
  CHECK(LogValue::zero().pow(3.0).is_zero());
}
