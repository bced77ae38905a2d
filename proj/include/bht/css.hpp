#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "bht/bounds.hpp"
#include "bht/exact_np.hpp"
#include "bht/monte_carlo.hpp"

namespace bht {

// Critical Sample Size: the first admissible n at which the feasibility
// interval pins beta_n within delta of e^{-n d}:
//   max{ UB(eps_n) - e^{-n d}, e^{-n d} - LB(eps_n) } <= delta.
// The scan is linear because the criterion is not monotone in n at small n.
struct CssQuery {
  ScalarMeasures measures;
  EpsilonSchedule schedule;
  double delta = 1e-8;
  long n_max = 1'000'000;
  bool collect_series = false;
};

struct CssResult {
  std::optional<long> css;          // empty: no n <= n_max qualifies (NotFound)
  long n_max = 0;
  double criterion_at_css = 0.0;    // linear value; may underflow to 0
  std::vector<std::pair<long, double>> series;  // (n, criterion) when collected
};

// The interval criterion at one n, in log domain.
LogValue css_criterion(const ScalarMeasures& m, const EpsilonSchedule& schedule, long n);

CssResult predicted_css(const CssQuery& query);

// One predicted_css per k, with delta = 10^-k.
std::vector<std::pair<double, CssResult>> css_sweep(const CssQuery& base,
                                                    const std::vector<int>& k_range);

// Oracle used by empirical_css.
struct CssOracle {
  enum class Kind { exact, mc } kind = Kind::exact;
  McConfig mc;                    // used when kind == mc
  std::size_t cap = 5'000'000;    // enumeration cap when kind == exact
};

// First admissible n with |beta_n(eps_n) - e^{-n d}| < delta, beta_n computed
// by the exact solver or the Monte Carlo estimator. Throws OracleInfeasible
// when the oracle cannot evaluate the pair.
CssResult empirical_css(const HypothesisPair& pair, const EpsilonSchedule& schedule,
                        double delta, const CssOracle& oracle, long n_max = 100'000);

}  // namespace bht
