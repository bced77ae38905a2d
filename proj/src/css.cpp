#include "bht/css.hpp"

#include <cmath>

namespace bht {

LogValue css_criterion(const ScalarMeasures& m, const EpsilonSchedule& schedule, long n) {
  BoundsResult b = bounds_at_abstract(m, schedule, n);
  LogValue mid = LogValue::from_ln(-static_cast<double>(n) * m.d);
  // UB >= mid always (delta_n >= 0 and UB clamps at 1); LB <= mid always
  LogValue above = LogValue::sub(b.log_ub, mid);
  LogValue below = LogValue::sub(mid, b.log_lb);
  return above > below ? above : below;
}

CssResult predicted_css(const CssQuery& query) {
  if (!(query.delta > 0.0)) throw Error(Errc::bad_argument, "delta must be > 0");
  if (!(query.measures.d > 0.0)) throw Error(Errc::bad_argument, "d must be > 0");
  CssResult result;
  result.n_max = query.n_max;
  double log_delta = std::log(query.delta);
  long first = query.schedule.first_admissible();
  long last = query.schedule.last_admissible();
  long stop = last < 0 ? query.n_max : std::min(query.n_max, last);
  for (long n = first; n <= stop; ++n) {
    LogValue crit = css_criterion(query.measures, query.schedule, n);
    if (query.collect_series) result.series.emplace_back(n, crit.linear());
    if (crit.ln() <= log_delta) {
      result.css = n;
      result.criterion_at_css = crit.linear();
      return result;
    }
  }
  return result;  // css empty: NotFound(n_max)
}

std::vector<std::pair<double, CssResult>> css_sweep(const CssQuery& base,
                                                    const std::vector<int>& k_range) {
  if (k_range.empty()) throw Error(Errc::bad_argument, "k_range must be non-empty");
  std::vector<std::pair<double, CssResult>> out;
  out.reserve(k_range.size());
  for (int k : k_range) {
    CssQuery q = base;
    q.delta = std::pow(10.0, -k);
    out.emplace_back(q.delta, predicted_css(q));
  }
  return out;
}

CssResult empirical_css(const HypothesisPair& pair, const EpsilonSchedule& schedule,
                        double delta, const CssOracle& oracle, long n_max) {
  if (!(delta > 0.0)) throw Error(Errc::bad_argument, "delta must be > 0");
  CssResult result;
  result.n_max = n_max;
  long first = schedule.first_admissible();
  long last = schedule.last_admissible();
  long stop = last < 0 ? n_max : std::min(n_max, last);
  for (long n = first; n <= stop; ++n) {
    double eps = schedule.epsilon_at(n);
    double beta;
    if (oracle.kind == CssOracle::Kind::exact) {
      try {
        beta = beta_exact(pair, n, eps, oracle.cap).beta.linear();
      } catch (const Error& e) {
        if (e.code() == Errc::enumeration_too_large)
          throw Error(Errc::oracle_infeasible,
                      "exact oracle infeasible at n=" + std::to_string(n));
        throw;
      }
    } else {
      beta = estimate_beta(pair, n, eps, oracle.mc).est.estimate;
    }
    double diff = std::abs(beta - std::exp(-static_cast<double>(n) * pair.d()));
    if (diff < delta) {
      result.css = n;
      result.criterion_at_css = diff;
      return result;
    }
  }
  return result;
}

}  // namespace bht
