#include "bht/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bht/rng.hpp"

namespace bht {

DiscreteDistribution validate_distribution(std::vector<double> masses, double tolerance,
                                           std::vector<std::string> labels) {
  if (masses.size() < 2)
    throw Error(Errc::alphabet_too_small, "alphabet size must be >= 2, got " +
                                              std::to_string(masses.size()));
  for (double m : masses) {
    if (std::isnan(m) || m < 0.0)
      throw Error(Errc::negative_mass, "mass " + std::to_string(m) + " is negative");
  }
  double sum = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (std::abs(sum - 1.0) > tolerance)
    throw Error(Errc::sum_out_of_tolerance,
                "masses sum to " + std::to_string(sum) + ", outside tolerance");
  for (double& m : masses) m /= sum;
  if (!labels.empty() && labels.size() != masses.size())
    throw Error(Errc::bad_argument, "label count does not match alphabet size");
  DiscreteDistribution d;
  d.masses_ = std::move(masses);
  d.labels_ = std::move(labels);
  return d;
}

HypothesisPair::HypothesisPair(DiscreteDistribution p, DiscreteDistribution q)
    : p_(std::move(p)), q_(std::move(q)) {
  if (p_.size() != q_.size())
    throw Error(Errc::alphabet_size_mismatch, "p has " + std::to_string(p_.size()) +
                                                  " symbols, q has " +
                                                  std::to_string(q_.size()));
  std::size_t m = p_.size();
  llr_.assign(m, 0.0);
  for (std::size_t x = 0; x < m; ++x) {
    bool pp = p_[x] > 0.0, qp = q_[x] > 0.0;
    if (pp != qp)
      throw Error(Errc::support_mismatch,
                  "supports differ at symbol " + std::to_string(x));
    if (!pp) continue;
    support_.push_back(x);
    llr_[x] = std::log(p_[x] / q_[x]);
  }
  d_ = v_ = c_x_ = 0.0;
  for (std::size_t x : support_) d_ += p_[x] * llr_[x];
  for (std::size_t x : support_) {
    v_ += p_[x] * (llr_[x] - d_) * (llr_[x] - d_);
    c_x_ = std::max(c_x_, std::abs(llr_[x]));
  }
  d_ = std::max(d_, 0.0);  // Gibbs: only float dust can go below zero
}

double kl_divergence(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0.0) d += a[i] * std::log(a[i] / b[i]);
  return std::max(d, 0.0);
}

DiscreteDistribution tilted(const HypothesisPair& pair, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(Errc::tilt_out_of_range, "t must be in [0,1], got " + std::to_string(t));
  const auto& p = pair.p().masses();
  const auto& q = pair.q().masses();
  std::vector<double> w(p.size(), 0.0);
  // log-domain geometric mixture, normalized against the max exponent
  double max_ln = -std::numeric_limits<double>::infinity();
  std::vector<double> ln_w(p.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t x : pair.support()) {
    ln_w[x] = (1.0 - t) * std::log(p[x]) + t * std::log(q[x]);
    max_ln = std::max(max_ln, ln_w[x]);
  }
  double z = 0.0;
  for (std::size_t x : pair.support()) z += std::exp(ln_w[x] - max_ln);
  for (std::size_t x : pair.support()) w[x] = std::exp(ln_w[x] - max_ln) / z;
  return validate_distribution(std::move(w), 1e-6);
}

double solve_tilt_rate(const HypothesisPair& pair, double r, double tol) {
  if (r < 0.0) throw Error(Errc::rate_out_of_range, "rate must be >= 0");
  const auto& p = pair.p().masses();
  auto rate_at = [&](double t) {
    return kl_divergence(tilted(pair, t).masses(), p);
  };
  double r_max = rate_at(1.0);  // = D(Q||P)
  if (r > r_max + tol)
    throw Error(Errc::rate_out_of_range,
                "rate " + std::to_string(r) + " exceeds D(Q||P) = " + std::to_string(r_max));
  if (r == 0.0) return 0.0;
  if (r >= r_max) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double f = rate_at(mid);
    if (std::abs(f - r) <= tol) return mid;
    (f < r ? lo : hi) = mid;
    if (hi - lo < 1e-17) break;
  }
  return 0.5 * (lo + hi);
}

double nakagawa_exponent(const HypothesisPair& pair, double r) {
  if (!(r > 0.0 && r < pair.d()))
    throw Error(Errc::rate_out_of_range,
                "rate must lie in (0, D(P||Q)) = (0, " + std::to_string(pair.d()) + ")");
  double t_star = solve_tilt_rate(pair, r);
  return kl_divergence(tilted(pair, t_star).masses(), pair.q().masses());
}

namespace {

// masses >= min_mass with full support: floor plus a normalized exponential
// (Dirichlet(1)) bulk
std::vector<double> draw_masses(std::size_t m, double min_mass, const CounterRng& rng,
                                std::uint64_t base) {
  std::vector<double> w(m);
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double u = rng.uniform(base + i);
    w[i] = -std::log1p(-u);
    sum += w[i];
  }
  double bulk = 1.0 - static_cast<double>(m) * min_mass;
  for (std::size_t i = 0; i < m; ++i) w[i] = min_mass + bulk * (w[i] / sum);
  return w;
}

}  // namespace

HypothesisPair synthesize_pair(std::size_t m, double target_d, double min_mass,
                               std::uint64_t seed) {
  if (m < 2) throw Error(Errc::alphabet_too_small, "m must be >= 2");
  if (min_mass < 0.0 || min_mass * static_cast<double>(m) >= 1.0)
    throw Error(Errc::bad_argument, "min_mass*m must be < 1");
  if (target_d < 0.0) throw Error(Errc::bad_argument, "target_d must be >= 0");

  constexpr int kMaxRetries = 64;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    CounterRng rng(seed, static_cast<std::uint64_t>(attempt));
    std::vector<double> p = draw_masses(m, min_mass, rng, 0);
    std::vector<double> q0 = draw_masses(m, min_mass, rng, m);
    double d_full = kl_divergence(p, q0);
    if (d_full < target_d) continue;

    // D(P || (1-l)P + l*Q0) is nondecreasing and continuous in l, 0 at l=0
    auto d_at = [&](double l) {
      std::vector<double> ql(m);
      for (std::size_t i = 0; i < m; ++i) ql[i] = (1.0 - l) * p[i] + l * q0[i];
      return kl_divergence(p, ql);
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-18; ++it) {
      double mid = 0.5 * (lo + hi);
      (d_at(mid) < target_d ? lo : hi) = mid;
    }
    double l = (target_d == 0.0) ? 0.0 : 0.5 * (lo + hi);
    std::vector<double> q(m);
    for (std::size_t i = 0; i < m; ++i) q[i] = (1.0 - l) * p[i] + l * q0[i];
    HypothesisPair pair(validate_distribution(std::move(p), 1e-6),
                        validate_distribution(std::move(q), 1e-6));
    if (std::abs(pair.d() - target_d) <= 1e-6) return pair;
  }
  throw Error(Errc::target_unreachable,
              "no seeded anchor reached D(P||Q) = " + std::to_string(target_d));
}

}  // namespace bht
