#include "bht/exact_np.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bht {

namespace {

double compositions_count(long n, std::size_t parts) {
  // C(n + parts - 1, parts - 1) in floating point; only used for the cap test
  double c = 1.0;
  for (std::size_t i = 1; i < parts; ++i)
    c *= static_cast<double>(n + static_cast<long>(i)) / static_cast<double>(i);
  return c;
}

std::optional<std::uint64_t> exact_multinomial(const std::vector<int>& counts, long n) {
  constexpr unsigned __int128 kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 total = 1;
  long rem = n;
  for (int k : counts) {
    unsigned __int128 c = 1;
    for (int i = 1; i <= k; ++i) {
      c *= static_cast<std::uint64_t>(rem - k + i);
      c /= static_cast<std::uint64_t>(i);  // exact: every prefix is a binomial
      if (c > kMax) return std::nullopt;
    }
    total *= c;
    if (total > kMax) return std::nullopt;
    rem -= k;
  }
  return static_cast<std::uint64_t>(total);
}

struct TypeRecord {
  double llr_total;
  TypeGroup group;
};

// log-sum-exp dust can push an exactly-one total a few ulp past ln(1) = 0
void clamp_probabilities(NPResult& r) {
  if (r.beta.ln() > 0.0) r.beta = LogValue::one();
  if (r.beta_threshold.ln() > 0.0) r.beta_threshold = LogValue::one();
}

}  // namespace

std::vector<LLRLevel> enumerate_levels(const HypothesisPair& pair, long n, std::size_t cap,
                                       double merge_tol) {
  if (n < 1) throw Error(Errc::bad_argument, "n must be >= 1");
  const auto& support = pair.support();
  const std::size_t ms = support.size();
  double total_types = compositions_count(n, ms);
  if (total_types > static_cast<double>(cap))
    throw Error(Errc::enumeration_too_large,
                std::to_string(total_types) + " type classes exceed cap " +
                    std::to_string(cap));

  std::vector<double> lfact(static_cast<std::size_t>(n) + 1, 0.0);
  for (long k = 1; k <= n; ++k)
    lfact[static_cast<std::size_t>(k)] = std::lgamma(static_cast<double>(k) + 1.0);

  std::vector<double> ln_p(ms), ln_q(ms), llr(ms);
  for (std::size_t i = 0; i < ms; ++i) {
    std::size_t x = support[i];
    ln_p[i] = std::log(pair.p()[x]);
    ln_q[i] = std::log(pair.q()[x]);
    llr[i] = pair.llr()[x];
  }

  std::vector<TypeRecord> records;
  records.reserve(static_cast<std::size_t>(total_types));
  std::vector<int> counts(ms, 0);

  // depth-first composition walk with incremental sums
  auto walk = [&](auto&& self, std::size_t i, long left, double lc, double lp, double lq,
                  double lt) -> void {
    if (i + 1 == ms) {
      counts[i] = static_cast<int>(left);
      TypeRecord rec;
      rec.llr_total = lt + static_cast<double>(left) * llr[i];
      rec.group.counts = counts;
      rec.group.log_count = lc - lfact[static_cast<std::size_t>(left)];
      rec.group.log_p_seq = lp + static_cast<double>(left) * ln_p[i];
      rec.group.log_q_seq = lq + static_cast<double>(left) * ln_q[i];
      rec.group.exact_count = exact_multinomial(counts, n);
      records.push_back(std::move(rec));
      return;
    }
    for (long k = 0; k <= left; ++k) {
      counts[i] = static_cast<int>(k);
      double kk = static_cast<double>(k);
      self(self, i + 1, left - k, lc - lfact[static_cast<std::size_t>(k)],
           lp + kk * ln_p[i], lq + kk * ln_q[i], lt + kk * llr[i]);
    }
  };
  walk(walk, 0, n, lfact[static_cast<std::size_t>(n)], 0.0, 0.0, 0.0);

  std::sort(records.begin(), records.end(), [](const TypeRecord& a, const TypeRecord& b) {
    if (a.llr_total != b.llr_total) return a.llr_total > b.llr_total;
    return a.group.counts < b.group.counts;
  });

  double tol = merge_tol * static_cast<double>(n);
  std::vector<LLRLevel> levels;
  for (auto& rec : records) {
    if (levels.empty() || levels.back().llr_total - rec.llr_total > tol) {
      levels.push_back({rec.llr_total, {}});
    }
    levels.back().groups.push_back(std::move(rec.group));
  }
  for (auto& lev : levels) {
    std::sort(lev.groups.begin(), lev.groups.end(), [](const TypeGroup& a, const TypeGroup& b) {
      if (a.log_p_seq != b.log_p_seq) return a.log_p_seq < b.log_p_seq;
      return a.counts < b.counts;
    });
  }
  return levels;
}

NPResult np_from_levels(const std::vector<LLRLevel>& levels, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw Error(Errc::bad_argument, "epsilon must be in [0,1]");
  NPResult r;
  double need = 1.0 - epsilon;
  if (need <= 0.0) {  // empty acceptance region is allowed
    r.beta = LogValue::zero();
    r.achieved_type1 = 1.0;
    r.threshold_llr = std::numeric_limits<double>::infinity();
    r.boundary_fraction = 0.0;
    r.beta_threshold = LogValue::zero();
    r.type1_threshold = 1.0;
    return r;
  }

  double cum_p = 0.0;
  LogValue acc_q = LogValue::zero();
  for (const auto& lev : levels) {
    double lev_p = 0.0;
    LogValue lev_q = LogValue::zero();
    LogValue lev_count = LogValue::zero();
    for (const auto& g : lev.groups) {
      lev_p += std::exp(g.log_count + g.log_p_seq);
      lev_q += LogValue::from_ln(g.log_count + g.log_q_seq);
      lev_count += LogValue::from_ln(g.log_count);
    }
    if (cum_p + lev_p < need) {
      cum_p += lev_p;
      acc_q += lev_q;
      continue;
    }

    // boundary level
    r.threshold_llr = lev.llr_total;
    r.beta_threshold = acc_q + lev_q;
    r.type1_threshold = std::max(0.0, 1.0 - (cum_p + lev_p));
    LogValue taken = LogValue::zero();
    for (const auto& g : lev.groups) {
      double rem = need - cum_p;
      double gp = std::exp(g.log_count + g.log_p_seq);
      if (gp < rem) {
        cum_p += gp;
        acc_q += LogValue::from_ln(g.log_count + g.log_q_seq);
        taken += LogValue::from_ln(g.log_count);
        continue;
      }
      // final group: minimal integer number of sequences closing the deficit
      double log_s = std::log(rem) - g.log_p_seq;
      if (log_s < 36.5) {  // below 2^52: ceil is meaningful in double
        double s = std::ceil(std::exp(log_s));
        double cnt = std::exp(g.log_count);
        if (s > cnt) s = cnt;  // guard against ceil dust past the group size
        if (s > 0.0) {
          log_s = std::log(s);
          cum_p += std::exp(log_s + g.log_p_seq);
          acc_q += LogValue::from_ln(log_s + g.log_q_seq);
          taken += LogValue::from_ln(log_s);
        }
      } else {
        // so many sequences that +-1 is invisible: close the deficit exactly
        cum_p += rem;
        acc_q += LogValue::from_ln(log_s + g.log_q_seq);
        taken += LogValue::from_ln(log_s);
      }
      break;
    }
    r.beta = acc_q;
    r.achieved_type1 = std::max(0.0, 1.0 - cum_p);
    r.boundary_fraction =
        lev_count.is_zero() ? 0.0 : std::exp(taken.ln() - lev_count.ln());
    clamp_probabilities(r);
    return r;
  }

  // epsilon ~ 0 with accumulation dust: the full space is the region
  r.beta = acc_q;
  r.achieved_type1 = std::max(0.0, 1.0 - cum_p);
  r.threshold_llr = levels.empty() ? 0.0 : levels.back().llr_total;
  r.boundary_fraction = 1.0;
  r.beta_threshold = acc_q;
  r.type1_threshold = r.achieved_type1;
  clamp_probabilities(r);
  return r;
}

NPResult beta_exact(const HypothesisPair& pair, long n, double epsilon, std::size_t cap) {
  return np_from_levels(enumerate_levels(pair, n, cap), epsilon);
}

NPResult beta_bruteforce(const HypothesisPair& pair, long n, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw Error(Errc::bad_argument, "epsilon must be in [0,1]");
  const auto& support = pair.support();
  const std::size_t ms = support.size();
  double seq_count = std::pow(static_cast<double>(ms), static_cast<double>(n));
  if (seq_count > 20.0)
    throw Error(Errc::too_large, "brute force needs support^n <= 20");
  const int total = static_cast<int>(seq_count);

  std::vector<double> p_seq(static_cast<std::size_t>(total), 1.0);
  std::vector<double> q_seq(static_cast<std::size_t>(total), 1.0);
  for (int s = 0; s < total; ++s) {
    int code = s;
    for (long pos = 0; pos < n; ++pos) {
      std::size_t x = support[static_cast<std::size_t>(code % static_cast<int>(ms))];
      code /= static_cast<int>(ms);
      p_seq[static_cast<std::size_t>(s)] *= pair.p()[x];
      q_seq[static_cast<std::size_t>(s)] *= pair.q()[x];
    }
  }

  double best_q = std::numeric_limits<double>::infinity();
  double best_type1 = 1.0;
  const std::uint32_t masks = 1u << total;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    double pa_c = 0.0, qa = 0.0;
    for (int s = 0; s < total; ++s) {
      if (mask >> s & 1u)
        qa += q_seq[static_cast<std::size_t>(s)];
      else
        pa_c += p_seq[static_cast<std::size_t>(s)];
    }
    if (pa_c <= epsilon && qa < best_q) {
      best_q = qa;
      best_type1 = pa_c;
    }
  }

  NPResult r;
  r.beta = LogValue::from_linear(best_q);
  r.achieved_type1 = best_type1;
  r.threshold_llr = std::numeric_limits<double>::quiet_NaN();
  r.boundary_fraction = std::numeric_limits<double>::quiet_NaN();
  r.beta_threshold = r.beta;
  r.type1_threshold = best_type1;
  return r;
}

double llr_tail_probability(const std::vector<LLRLevel>& levels, long n, double center,
                            double delta) {
  double tail = 0.0;
  double nn = static_cast<double>(n);
  for (const auto& lev : levels) {
    if (std::abs(lev.llr_total / nn - center) < delta) continue;
    for (const auto& g : lev.groups) tail += std::exp(g.log_count + g.log_p_seq);
  }
  return tail;
}

}  // namespace bht
