#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bht/bounds.hpp"
#include "bht/exact_np.hpp"
#include "bht/monte_carlo.hpp"
#include "oracle_helpers.hpp"

using namespace bht;

namespace {
HypothesisPair binary_pair() {
  return make_pair(validate_distribution({0.5, 0.5}), validate_distribution({0.25, 0.75}));
}
}  // namespace

TEST_CASE("bit-identical outputs across seeds and chunk layouts") {
  auto pair = oracle::random_pair(5, 3, 0.05);
  McConfig a{20000, 42, 1};
  McConfig b{20000, 42, 7};
  auto sa = sample_llr_sums(pair, 12, Hypothesis::P, a);
  auto sb = sample_llr_sums(pair, 12, Hypothesis::P, b);
  CHECK(sa == sb);  // exact equality: chunking must not change anything

  auto ba = estimate_beta(pair, 12, 0.2, a);
  auto bb = estimate_beta(pair, 12, 0.2, b);
  CHECK(ba.est.estimate == bb.est.estimate);
  CHECK(ba.threshold == bb.threshold);

  McConfig c{20000, 43, 1};
  auto sc = sample_llr_sums(pair, 12, Hypothesis::P, c);
  CHECK(sa != sc);
}

TEST_CASE("P = Q gives identically zero sums") {
  auto pq = make_pair(validate_distribution({0.3, 0.7}), validate_distribution({0.3, 0.7}));
  auto sums = sample_llr_sums(pq, 9, Hypothesis::P, {5000, 1, 1});
  for (double s : sums) CHECK(s == 0.0);
}

TEST_CASE("block means match the divergences under both hypotheses") {
  auto pair = binary_pair();
  long n = 40;
  McConfig cfg{200000, 7, 8};
  auto under_p = sample_llr_sums(pair, n, Hypothesis::P, cfg);
  auto under_q = sample_llr_sums(pair, n, Hypothesis::Q, cfg);
  double mean_p = 0.0, mean_q = 0.0;
  for (double s : under_p) mean_p += s;
  for (double s : under_q) mean_q += s;
  mean_p /= static_cast<double>(cfg.num_samples) * static_cast<double>(n);
  mean_q /= static_cast<double>(cfg.num_samples) * static_cast<double>(n);

  double tol = 5.0 * std::sqrt(pair.v() / (static_cast<double>(n) * cfg.num_samples));
  CHECK(std::abs(mean_p - pair.d()) <= tol);
  double d_qp = oracle::kl_direct(pair.q().masses(), pair.p().masses());
  CHECK(std::abs(mean_q - (-d_qp)) <= tol);
}

TEST_CASE("estimate_beta agrees with the exact value on the worked example") {
  auto pair = binary_pair();
  auto mc = estimate_beta(pair, 2, 0.3, {100000, 11, 4});
  CHECK(std::abs(mc.est.estimate - 0.4375) <= 4.0 * mc.est.stderr_);
  CHECK(mc.est.stderr_ == doctest::Approx(std::sqrt(mc.est.estimate *
                                                    (1.0 - mc.est.estimate) / 100000.0)));
}

TEST_CASE("estimate_beta tracks the threshold test on a partial-boundary cell") {
  // at (n=10, eps=0.1) the deterministic optimum slices the boundary level;
  // the plug-in estimator targets the full-level threshold test instead
  auto pair = binary_pair();
  auto exact = beta_exact(pair, 10, 0.1);
  REQUIRE(exact.boundary_fraction < 1.0);
  auto mc = estimate_beta(pair, 10, 0.1, {100000, 19, 4});
  CHECK(std::abs(mc.est.estimate - exact.beta_threshold.linear()) <=
        4.0 * mc.est.stderr_);
  CHECK(mc.est.estimate >= exact.beta.linear() - 4.0 * mc.est.stderr_);
  CHECK(mc.threshold == doctest::Approx(exact.threshold_llr).epsilon(1e-12));
}

TEST_CASE("epsilon near one drives the estimate to zero") {
  auto pair = binary_pair();
  auto mc = estimate_beta(pair, 6, 0.999, {50000, 3, 2});
  CHECK(mc.est.estimate <= 0.01);
}

TEST_CASE("concentration bound on the binary example") {
  auto pair = binary_pair();
  auto r = concentration_check(pair, 50, 0.3, {1000000, 123, 8});
  CHECK(r.bound == doctest::Approx(0.009250476574).epsilon(1e-9));
  CHECK(!r.degenerate);
  CHECK(r.pass);
  CHECK(r.empirical.estimate < r.bound);

  // the sampled tail must also sit near the exactly enumerated tail
  auto levels = enumerate_levels(pair, 50);
  double exact_tail = llr_tail_probability(levels, 50, pair.d(), 0.3);
  CHECK(std::abs(r.empirical.estimate - exact_tail) <=
        4.0 * std::sqrt(exact_tail * (1.0 - exact_tail) / 1e6) + 1e-6);
}

TEST_CASE("degenerate pair reports a vacuous bound instead of failing") {
  auto pq = make_pair(validate_distribution({0.4, 0.6}), validate_distribution({0.4, 0.6}));
  auto r = concentration_check(pq, 20, 0.1, {10000, 5, 1});
  CHECK(r.degenerate);
  CHECK(r.bound == 1.0);
  CHECK(r.empirical.estimate == 0.0);
  CHECK(r.pass);
}

TEST_CASE("tiny delta keeps the bound close to one and the check trivially true") {
  auto pair = binary_pair();
  auto r = concentration_check(pair, 10, 1e-4, {20000, 9, 2});
  CHECK(r.bound == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.pass);
}

TEST_CASE("estimate lands inside the feasibility interval") {
  auto pair = binary_pair();
  struct Cell {
    EpsilonSchedule s;
    long n;
  };
  Cell cells[] = {{EpsilonSchedule::constant(0.1), 20},
                  {EpsilonSchedule::constant(0.1), 40},
                  {EpsilonSchedule::constant(0.1), 60},
                  {EpsilonSchedule::reciprocal(), 30},
                  {EpsilonSchedule::log_reciprocal(), 25}};
  for (const auto& cell : cells) {
    double eps = cell.s.epsilon_at(cell.n);
    auto b = bounds_at(pair, eps, cell.n);
    auto mc = estimate_beta(pair, cell.n, eps, {100000, 4242, 4});
    double slack = 4.0 * mc.est.stderr_;
    CHECK(mc.est.estimate <= b.log_ub.linear() + slack);
    if (b.lb_valid) CHECK(mc.est.estimate >= b.log_lb.linear() - slack);
  }
}

TEST_CASE("concentration_from_sums matches concentration_check") {
  auto pair = binary_pair();
  McConfig cfg{30000, 77, 3};
  auto sums = sample_llr_sums(pair, 25, Hypothesis::P, cfg);
  auto direct = concentration_check(pair, 25, 0.2, cfg);
  auto reused = concentration_from_sums(sums, 25, pair.d(), pair.c_x(), 0.2);
  CHECK(direct.empirical.estimate == reused.empirical.estimate);
  CHECK(direct.bound == reused.bound);
}
