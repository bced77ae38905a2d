#pragma once
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "bht/errors.hpp"

namespace bht {

// Nonnegative real stored as its natural log. Needed because the quantities
// this library reports (Type II errors, bound gaps) routinely sit far below
// the smallest normal double, e.g. e^-700 at n in the hundreds. ln = -inf
// encodes exact zero.
class LogValue {
 public:
  constexpr LogValue() : ln_(-std::numeric_limits<double>::infinity()) {}

  static constexpr LogValue zero() { return LogValue(); }
  static constexpr LogValue one() { return from_ln(0.0); }
  static constexpr LogValue from_ln(double ln_x) {
    LogValue v;
    v.ln_ = ln_x;
    return v;
  }
  static LogValue from_linear(double x) {
    if (x < 0.0 || std::isnan(x))
      throw Error(Errc::out_of_domain, "LogValue: negative or NaN operand");
    return from_ln(std::log(x));  // log(0) = -inf is the zero encoding
  }

  bool is_zero() const { return std::isinf(ln_) && ln_ < 0.0; }
  double ln() const { return ln_; }
  double log10() const { return ln_ / std::numbers::ln10; }
  double linear() const { return std::exp(ln_); }  // may underflow to 0

  // log-sum-exp; exact when either side is zero
  friend LogValue operator+(LogValue a, LogValue b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    double hi = a.ln_ > b.ln_ ? a.ln_ : b.ln_;
    double lo = a.ln_ > b.ln_ ? b.ln_ : a.ln_;
    return from_ln(hi + std::log1p(std::exp(lo - hi)));
  }
  LogValue& operator+=(LogValue b) { return *this = *this + b; }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_ln(a.ln_ + b.ln_);
  }

  // a - b in log domain; defined only for a >= b
  static LogValue sub(LogValue a, LogValue b) {
    if (b.is_zero()) return a;
    if (b.ln_ > a.ln_)
      throw Error(Errc::out_of_domain, "LogValue::sub: minuend < subtrahend");
    if (b.ln_ == a.ln_) return zero();
    return from_ln(a.ln_ + std::log1p(-std::exp(b.ln_ - a.ln_)));
  }

  LogValue pow(double k) const {
    if (is_zero()) return k == 0.0 ? one() : zero();
    return from_ln(ln_ * k);
  }

  friend bool operator<(LogValue a, LogValue b) { return a.ln_ < b.ln_; }
  friend bool operator>(LogValue a, LogValue b) { return a.ln_ > b.ln_; }
  friend bool operator<=(LogValue a, LogValue b) { return a.ln_ <= b.ln_; }
  friend bool operator>=(LogValue a, LogValue b) { return a.ln_ >= b.ln_; }
  friend bool operator==(LogValue a, LogValue b) { return a.ln_ == b.ln_; }

 private:
  double ln_;
};

// Scientific string "m.mmmmmE-xxx" built from the log10 representation, so
// magnitudes below DBL_MIN survive serialization. sig_digits counts total
// significant digits of the mantissa. Exact zero prints "0".
inline std::string sci_from_log10(double l10, int sig_digits = 6) {
  if (std::isinf(l10) && l10 < 0.0) return "0";
  if (sig_digits < 1) sig_digits = 1;
  if (sig_digits > 17) sig_digits = 17;
  double e = std::floor(l10);
  double mant = std::pow(10.0, l10 - e);
  // rounding the mantissa can carry it to 10.0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", sig_digits - 1, mant);
  if (buf[0] == '1' && buf[1] == '0') {
    e += 1.0;
    std::snprintf(buf, sizeof(buf), "%.*f", sig_digits - 1, 1.0);
  }
  char expo[16];
  std::snprintf(expo, sizeof(expo), "%+04d", static_cast<int>(e));
  return std::string(buf) + "e" + expo;
}

inline std::string sci_string(LogValue v, int sig_digits = 6) {
  return sci_from_log10(v.log10(), sig_digits);
}

// Inverse of sci_from_log10: recovers log10 from the string without going
// through a double (which would flush sub-DBL_MIN magnitudes to zero).
inline double log10_from_sci(const std::string& s) {
  if (s == "0") return -std::numeric_limits<double>::infinity();
  auto epos = s.find_first_of("eE");
  if (epos == std::string::npos)
    throw Error(Errc::bad_argument, "not a scientific literal: " + s);
  double mant = std::stod(s.substr(0, epos));
  double expo = std::stod(s.substr(epos + 1));
  return std::log10(mant) + expo;
}

}  // namespace bht
