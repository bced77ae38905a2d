#include "bht/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace bht {

double delta_n(double c_x, double epsilon, long n) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error(Errc::bad_argument, "epsilon must be in (0,1)");
  if (n < 1) throw Error(Errc::bad_argument, "n must be >= 1");
  if (c_x == 0.0) return 0.0;
  return c_x * std::sqrt(2.0 * std::log(1.0 / epsilon) / static_cast<double>(n));
}

BoundsResult bounds_at_abstract(const ScalarMeasures& m, double epsilon, long n) {
  BoundsResult r;
  r.n = n;
  r.epsilon_n = epsilon;
  r.delta_n = delta_n(m.c_x, epsilon, n);
  r.exp_lower = m.d - r.delta_n;
  double nn = static_cast<double>(n);
  r.log_ub = LogValue::from_ln(std::min(0.0, -nn * r.exp_lower));  // UB <= 1
  double prefactor = 1.0 - epsilon - r.delta_n;
  r.lb_valid = prefactor > 0.0;
  if (r.lb_valid) {
    r.exp_upper = m.d + r.delta_n + std::log(1.0 / prefactor) / nn;
    r.log_lb = LogValue::from_ln(-nn * (m.d + r.delta_n) + std::log(prefactor));
  } else {
    r.exp_upper = std::numeric_limits<double>::infinity();
    r.log_lb = LogValue::zero();
  }
  return r;
}

BoundsResult bounds_at_abstract(const ScalarMeasures& m, const EpsilonSchedule& schedule,
                                long n) {
  return bounds_at_abstract(m, schedule.epsilon_at(n), n);
}

LogValue gap(const BoundsResult& r) {
  if (!r.lb_valid || r.log_lb.is_zero()) return r.log_ub;
  return LogValue::sub(r.log_ub, r.log_lb);
}

namespace {

// Rational approximation (Acklam) with |relative error| < 1.2e-9, then one
// Halley step against erfc brings it to machine accuracy.
double acklam_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5, r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw Error(Errc::out_of_domain, "quantile argument must be in (0,1)");
  // reflect the upper tail: 1-p is exact for p in [0.5, 1] (Sterbenz), and the
  // lower-tail erfc keeps full relative accuracy during refinement
  if (p > 0.5) return -inverse_normal_cdf(1.0 - p);
  double x = acklam_quantile(p);
  // Halley refinement on Phi(x) - p; here x <= 0 so erfc sees a nonnegative arg
  double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double strassen_exponent(const HypothesisPair& pair, double epsilon, long n) {
  if (n < 1) throw Error(Errc::bad_argument, "n must be >= 1");
  double nn = static_cast<double>(n);
  return pair.d() + std::sqrt(pair.v() / nn) * inverse_normal_cdf(epsilon) +
         std::log(nn) / (2.0 * nn);
}

ExponentTriple exponent_triple(const HypothesisPair& pair, double r, double epsilon, long n) {
  ExponentTriple t;
  t.stein = pair.d();
  t.nakagawa = nakagawa_exponent(pair, r);
  t.strassen = strassen_exponent(pair, epsilon, n);
  return t;
}

}  // namespace bht
