#pragma once
#include "bht/distribution.hpp"
#include "bht/log_value.hpp"
#include "bht/schedule.hpp"

namespace bht {

// Feasibility interval for the optimal Type II error at one n:
//   UB = exp(-n (d - delta_n))            clamped at 1
//   LB = (1 - eps_n - delta_n) exp(-n (d + delta_n))   clamped at 0
// where delta_n = c_x sqrt(2 ln(1/eps_n) / n). When the LB prefactor is
// nonpositive, lb_valid is false, log_lb is exact zero and exp_upper is
// +infinity (the formula's log argument leaves its domain).
struct BoundsResult {
  long n = 0;
  double epsilon_n = 0.0;
  double delta_n = 0.0;
  double exp_lower = 0.0;  // d - delta_n (nats)
  double exp_upper = 0.0;  // d + ln(1/(1-eps-delta))/n + delta_n (nats)
  LogValue log_ub;
  LogValue log_lb;
  bool lb_valid = false;
};

// Scalar stand-ins for (d, c_x) when only the information measures of a model
// are published. consistent() reflects d <= c_x, which every actual pair
// satisfies; evaluation proceeds either way and callers decide whether to warn.
struct ScalarMeasures {
  double d = 0.0;
  double c_x = 0.0;
  bool consistent() const { return c_x >= d - 1e-12; }
};

double delta_n(double c_x, double epsilon, long n);
inline double delta_n(const HypothesisPair& pair, double epsilon, long n) {
  return delta_n(pair.c_x(), epsilon, n);
}

BoundsResult bounds_at_abstract(const ScalarMeasures& m, const EpsilonSchedule& schedule,
                                long n);
BoundsResult bounds_at_abstract(const ScalarMeasures& m, double epsilon, long n);
inline BoundsResult bounds_at(const HypothesisPair& pair, const EpsilonSchedule& schedule,
                              long n) {
  return bounds_at_abstract({pair.d(), pair.c_x()}, schedule, n);
}
inline BoundsResult bounds_at(const HypothesisPair& pair, double epsilon, long n) {
  return bounds_at_abstract({pair.d(), pair.c_x()}, epsilon, n);
}

// Interval width UB - LB in log domain; equals UB when the LB is clamped.
LogValue gap(const BoundsResult& r);

// Standard normal quantile; |error| <= 1e-9 on [1e-12, 1-1e-12].
double inverse_normal_cdf(double p);

// Second-order expansion of the optimal exponent at fixed epsilon, without
// the O(1/n) residual: d + sqrt(v/n) PhiInv(eps) + ln(n)/(2n).
double strassen_exponent(const HypothesisPair& pair, double epsilon, long n);

// Reference exponents: stein = d always; nakagawa is populated for a rate r
// in (0, d) via the tilted-distribution solver.
struct ExponentTriple {
  double stein = 0.0;
  double nakagawa = 0.0;
  double strassen = 0.0;
};
ExponentTriple exponent_triple(const HypothesisPair& pair, double r, double epsilon, long n);

}  // namespace bht
