#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bht/bounds.hpp"
#include "bht/exact_np.hpp"
#include "oracle_helpers.hpp"

using namespace bht;

namespace {
HypothesisPair binary_pair() {
  return make_pair(validate_distribution({0.5, 0.5}), validate_distribution({0.25, 0.75}));
}

double level_p_mass(const LLRLevel& lev) {
  double m = 0.0;
  for (const auto& g : lev.groups) m += std::exp(g.log_count + g.log_p_seq);
  return m;
}
}  // namespace

TEST_CASE("levels of the binary pair at n=2") {
  auto levels = enumerate_levels(binary_pair(), 2);
  REQUIRE(levels.size() == 3);
  CHECK(levels[0].llr_total == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(levels[1].llr_total == doctest::Approx(std::log(2.0) + std::log(2.0 / 3.0)));
  CHECK(levels[2].llr_total == doctest::Approx(2.0 * std::log(2.0 / 3.0)));
  CHECK(*levels[0].groups[0].exact_count == 1);
  CHECK(*levels[1].groups[0].exact_count == 2);
  CHECK(*levels[2].groups[0].exact_count == 1);

  // total sequence count over all levels = 2^2
  double total = 0.0;
  for (const auto& lev : levels)
    for (const auto& g : lev.groups) total += std::exp(g.log_count);
  CHECK(total == doctest::Approx(4.0));
}

TEST_CASE("identical distributions collapse to a single level") {
  auto pq = make_pair(validate_distribution({0.5, 0.5}), validate_distribution({0.5, 0.5}));
  auto levels = enumerate_levels(pq, 6);
  REQUIRE(levels.size() == 1);
  CHECK(levels[0].llr_total == doctest::Approx(0.0));
  CHECK(levels[0].groups.size() == 7);  // one group per type class
}

TEST_CASE("mass conservation under both measures") {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    auto pair = oracle::random_pair(seed, 2 + seed % 3, 0.02);
    for (long n : {1L, 7L, 40L}) {
      auto levels = enumerate_levels(pair, n);
      double p_total = 0.0, q_total = 0.0;
      for (const auto& lev : levels)
        for (const auto& g : lev.groups) {
          p_total += std::exp(g.log_count + g.log_p_seq);
          q_total += std::exp(g.log_count + g.log_q_seq);
        }
      CHECK(p_total == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(q_total == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("within-level LLR consistency") {
  auto pair = oracle::random_pair(17, 3, 0.05);
  long n = 25;
  auto levels = enumerate_levels(pair, n);
  for (const auto& lev : levels)
    for (const auto& g : lev.groups)
      CHECK(std::abs((g.log_p_seq - g.log_q_seq) - lev.llr_total) <=
            1e-9 * std::max(1.0, static_cast<double>(n)));
}

TEST_CASE("enumeration cap") {
  auto pair = oracle::random_pair(9, 4, 0.05);
  try {
    (void)enumerate_levels(pair, 2000);  // C(2003,3) ~ 1.3e9 types
    FAIL("expected EnumerationTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::enumeration_too_large);
  }
}

TEST_CASE("worked example: n=2, eps=0.3") {
  auto r = beta_exact(binary_pair(), 2, 0.3);
  CHECK(r.beta.linear() == doctest::Approx(0.4375).epsilon(1e-12));
  CHECK(r.achieved_type1 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.achieved_type1 <= 0.3);
  CHECK(r.threshold_llr == doctest::Approx(std::log(2.0) + std::log(2.0 / 3.0)));
  CHECK(r.boundary_fraction == doctest::Approx(1.0));
  // brute force agrees exactly here
  auto bf = beta_bruteforce(binary_pair(), 2, 0.3);
  CHECK(bf.beta.linear() == doctest::Approx(0.4375).epsilon(1e-12));
}

TEST_CASE("epsilon extremes") {
  auto pair = binary_pair();
  auto all = beta_exact(pair, 3, 1.0);
  CHECK(all.beta.is_zero());
  CHECK(all.achieved_type1 == 1.0);
  auto none = beta_exact(pair, 3, 0.0);
  CHECK(none.beta.linear() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(none.achieved_type1 == doctest::Approx(0.0));
  CHECK(beta_bruteforce(pair, 2, 1.0).beta.is_zero());
}

TEST_CASE("P = Q symmetry value") {
  auto pq = make_pair(validate_distribution({0.5, 0.5}), validate_distribution({0.5, 0.5}));
  auto r = beta_exact(pq, 2, 0.3);
  CHECK(r.beta.linear() == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("greedy optimum vs exhaustive subsets") {
  // every feasible instance with support^n <= 20
  int checked = 0;
  for (std::uint64_t seed = 40; seed < 52; ++seed) {
    auto pair = oracle::random_pair(seed, 2, 0.03);
    for (long n : {2L, 3L, 4L}) {
      for (int ei = 1; ei <= 19; ++ei) {
        double eps = 0.05 * ei;
        auto greedy = beta_exact(pair, n, eps);
        auto brute = beta_bruteforce(pair, n, eps);
        double bg = greedy.beta.linear(), bb = brute.beta.linear();
        CHECK(bg >= bb - 1e-12);
        // excess bounded by one boundary sequence's q-mass
        auto levels = enumerate_levels(pair, n);
        double max_q_seq = 0.0;
        for (const auto& lev : levels) {
          if (std::abs(lev.llr_total - greedy.threshold_llr) > 1e-9) continue;
          for (const auto& g : lev.groups)
            max_q_seq = std::max(max_q_seq, std::exp(g.log_q_seq));
        }
        CHECK(bg - bb <= max_q_seq + 1e-12);
        ++checked;
      }
    }
  }
  CHECK(checked == 12 * 3 * 19);
}

TEST_CASE("beta is non-increasing in epsilon") {
  auto pair = oracle::random_pair(77, 3, 0.02);
  for (long n : {5L, 12L, 30L}) {
    auto levels = enumerate_levels(pair, n);
    double prev = 2.0;
    for (int ei = 1; ei <= 39; ++ei) {
      double b = np_from_levels(levels, 0.025 * ei).beta.linear();
      CHECK(b <= prev + 1e-15);
      prev = b;
    }
  }
}

TEST_CASE("threshold consistency: the boundary level is necessary") {
  auto pair = binary_pair();
  for (long n : {5L, 11L, 23L}) {
    double eps = 0.17;
    auto levels = enumerate_levels(pair, n);
    auto r = np_from_levels(levels, eps);
    // drop the boundary level entirely: the type I budget must break
    double cum = 0.0;
    for (const auto& lev : levels) {
      if (lev.llr_total <= r.threshold_llr + 1e-12) break;
      cum += level_p_mass(lev);
    }
    CHECK(1.0 - cum > eps);
    // the threshold variant includes the whole level and stays in budget
    CHECK(r.type1_threshold <= eps + 1e-12);
    CHECK(r.beta_threshold >= r.beta);
    CHECK(r.boundary_fraction >= 0.0);
    CHECK(r.boundary_fraction <= 1.0);
  }
}

TEST_CASE("achieved type I never exceeds the budget") {
  for (std::uint64_t seed = 60; seed < 70; ++seed) {
    auto pair = oracle::random_pair(seed, 2 + seed % 3, 0.02);
    auto levels = enumerate_levels(pair, 17);
    for (int ei = 1; ei <= 9; ++ei) {
      double eps = 0.1 * ei;
      auto r = np_from_levels(levels, eps);
      CHECK(r.achieved_type1 <= eps + 1e-12);
      CHECK(r.beta.linear() <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("brute force rejects oversized instances") {
  auto pair = binary_pair();
  CHECK_THROWS_AS((void)beta_bruteforce(pair, 5, 0.3), Error);  // 2^5 = 32 > 20
}

TEST_CASE("regression anchors for the binary pair") {
  // frozen from an independent prototype of the same construction
  auto pair = binary_pair();
  CHECK(beta_exact(pair, 10, 0.1).beta.linear() ==
        doctest::Approx(0.3784656524658202).epsilon(1e-12));
  CHECK(beta_exact(pair, 50, 0.1).beta.linear() ==
        doctest::Approx(0.006504178892046912).epsilon(1e-12));
  CHECK(beta_exact(pair, 20, 0.3).beta.linear() ==
        doctest::Approx(0.032769241741334616).epsilon(1e-12));
  CHECK(beta_exact(pair, 100, 0.02).beta.linear() ==
        doctest::Approx(0.0006063378096993225).epsilon(1e-12));
}

TEST_CASE("exact beta sits inside the feasibility interval (binary pair)") {
  auto pair = binary_pair();
  for (long n = 1; n <= 100; ++n) {
    auto levels = enumerate_levels(pair, n);
    for (double eps : {0.1, n >= 2 ? 1.0 / n : 0.5}) {
      auto np = np_from_levels(levels, eps);
      auto b = bht::bounds_at(pair, eps, n);
      CHECK(np.beta.ln() <= b.log_ub.ln() + 1e-9);
      if (b.lb_valid) CHECK(np.beta.ln() >= b.log_lb.ln() - 1e-9);
      // the optimal threshold test also obeys the achievability bound
      CHECK(np.beta_threshold.ln() <= b.log_ub.ln() + 1e-9);
    }
  }
}

TEST_CASE("exact tail of the empirical divergence at n=1") {
  auto pair = binary_pair();
  auto levels = enumerate_levels(pair, 1);
  double spread = std::abs(pair.llr()[0] - pair.d());  // both symbols equidistant
  CHECK(llr_tail_probability(levels, 1, pair.d(), spread * 0.9) == doctest::Approx(1.0));
  CHECK(llr_tail_probability(levels, 1, pair.d(), spread * 1.1) == doctest::Approx(0.0));
}
