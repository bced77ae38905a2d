#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bht/errors.hpp"

namespace bht {

// Probability vector on a finite alphabet (size >= 2). Masses are validated
// and renormalized on construction; instances are immutable afterwards.
class DiscreteDistribution {
 public:
  const std::vector<double>& masses() const { return masses_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return masses_.size(); }
  double operator[](std::size_t i) const { return masses_[i]; }

  friend DiscreteDistribution validate_distribution(std::vector<double> masses,
                                                    double tolerance,
                                                    std::vector<std::string> labels);

 private:
  DiscreteDistribution() = default;
  std::vector<double> masses_;
  std::vector<std::string> labels_;
};

// Checks nonnegativity, alphabet size >= 2 and |sum-1| <= tolerance, then
// renormalizes by the exact sum. Throws NegativeMass, AlphabetTooSmall or
// SumOutOfTolerance.
DiscreteDistribution validate_distribution(std::vector<double> masses,
                                           double tolerance = Tolerances{}.dist_sum,
                                           std::vector<std::string> labels = {});

// (P, Q) with cached information measures, all in nats:
//   llr[x] = ln(p[x]/q[x])            (0 on zero-mass symbols)
//   d      = D(P||Q)  = sum p*llr
//   v      = V(P||Q)  = sum p*(llr-d)^2
//   c_x    = max |llr| over the support
// Requires equal alphabet sizes and identical supports (so c_x is finite and
// P << Q holds both ways).
class HypothesisPair {
 public:
  HypothesisPair(DiscreteDistribution p, DiscreteDistribution q);

  const DiscreteDistribution& p() const { return p_; }
  const DiscreteDistribution& q() const { return q_; }
  const std::vector<double>& llr() const { return llr_; }
  double d() const { return d_; }
  double v() const { return v_; }
  double c_x() const { return c_x_; }
  // indices of symbols with positive mass
  const std::vector<std::size_t>& support() const { return support_; }

 private:
  DiscreteDistribution p_, q_;
  std::vector<double> llr_;
  std::vector<std::size_t> support_;
  double d_ = 0.0, v_ = 0.0, c_x_ = 0.0;
};

inline HypothesisPair make_pair(DiscreteDistribution p, DiscreteDistribution q) {
  return HypothesisPair(std::move(p), std::move(q));
}

// Normalized geometric interpolation P_t(x) ~ p(x)^(1-t) q(x)^t, t in [0,1].
DiscreteDistribution tilted(const HypothesisPair& pair, double t);

// Divergence helper used by the tilt solver and tests: D(a||b) over a common
// support, in nats.
double kl_divergence(const std::vector<double>& a, const std::vector<double>& b);

// Solves D(P_t || P) = r for t in [0,1] by bisection (the map is
// nondecreasing). r must lie in [0, D(Q||P)]; accuracy |D(P_t||P)-r| <= tol.
double solve_tilt_rate(const HypothesisPair& pair, double r,
                       double tol = Tolerances{}.bisection);

// D(P_{t*}||Q) with t* from solve_tilt_rate: the Type II exponent under an
// exponentially decaying Type I budget e^{-rn}. Requires 0 < r < D(P||Q).
double nakagawa_exponent(const HypothesisPair& pair, double r);

// Deterministic synthetic pair with d within 1e-6 of target_d: draws a seeded
// anchor pair (P, Q0) with all masses >= min_mass, then bisects the mixture
// Q_lambda = (1-lambda) P + lambda Q0 on D(P||Q_lambda). Retries with derived
// seeds a bounded number of times before TargetUnreachable.
HypothesisPair synthesize_pair(std::size_t m, double target_d, double min_mass,
                               std::uint64_t seed);

}  // namespace bht
