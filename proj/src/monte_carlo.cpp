#include "bht/monte_carlo.hpp"

#include <algorithm>
#include <cmath>

#include "bht/parallel.hpp"
#include "bht/rng.hpp"

namespace bht {

namespace {

// stream ids keep the P- and Q-sample universes disjoint
constexpr std::uint64_t kStreamP = 0x50;
constexpr std::uint64_t kStreamQ = 0x51;

std::vector<double> cumulative(const std::vector<double>& masses) {
  std::vector<double> cum(masses.size());
  double run = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    run += masses[i];
    cum[i] = run;
  }
  cum.back() = 1.0;  // guard against accumulation dust at the top
  return cum;
}

std::size_t pick_symbol(const std::vector<double>& cum, double u) {
  auto it = std::upper_bound(cum.begin(), cum.end(), u);
  return static_cast<std::size_t>(it == cum.end() ? cum.size() - 1
                                                  : it - cum.begin());
}

}  // namespace

std::vector<double> sample_llr_sums(const HypothesisPair& pair, long n, Hypothesis hyp,
                                    const McConfig& config) {
  if (config.num_samples < 1) throw Error(Errc::bad_argument, "num_samples must be >= 1");
  if (n < 1) throw Error(Errc::bad_argument, "n must be >= 1");
  const auto& dist = hyp == Hypothesis::P ? pair.p() : pair.q();
  std::vector<double> cum = cumulative(dist.masses());
  const std::vector<double>& llr = pair.llr();
  CounterRng rng(config.seed, hyp == Hypothesis::P ? kStreamP : kStreamQ);

  std::vector<double> sums(static_cast<std::size_t>(config.num_samples));
  const std::uint64_t block = static_cast<std::uint64_t>(n);
  const std::size_t m = llr.size();
  parallel_chunks(config.num_samples, config.stream_chunks,
                  [&](int, std::int64_t begin, std::int64_t end) {
                    // per-block symbol counts, then one dot product in symbol
                    // order: blocks of equal type give bit-identical sums, so
                    // threshold comparisons on lattice values stay exact
                    std::vector<long> counts(m);
                    for (std::int64_t s = begin; s < end; ++s) {
                      std::uint64_t base = static_cast<std::uint64_t>(s) * block;
                      std::fill(counts.begin(), counts.end(), 0L);
                      for (std::uint64_t j = 0; j < block; ++j)
                        ++counts[pick_symbol(cum, rng.uniform(base + j))];
                      double total = 0.0;
                      for (std::size_t x = 0; x < m; ++x)
                        if (counts[x]) total += static_cast<double>(counts[x]) * llr[x];
                      sums[static_cast<std::size_t>(s)] = total;
                    }
                  });
  return sums;
}

McBeta estimate_beta(const HypothesisPair& pair, long n, double epsilon,
                     const McConfig& config) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error(Errc::bad_argument, "epsilon must be in (0,1)");
  std::vector<double> p_sums = sample_llr_sums(pair, n, Hypothesis::P, config);
  std::vector<double> q_sums = sample_llr_sums(pair, n, Hypothesis::Q, config);

  // lower empirical quantile: k samples may sit strictly below the threshold,
  // k = floor(eps*N) <= eps*N, so the Type I budget holds by construction
  const std::int64_t N = config.num_samples;
  auto k = static_cast<std::int64_t>(std::floor(epsilon * static_cast<double>(N)));
  if (k >= N) k = N - 1;
  std::nth_element(p_sums.begin(), p_sums.begin() + k, p_sums.end());
  double threshold = p_sums[static_cast<std::size_t>(k)];

  std::int64_t hits = 0;
  for (double s : q_sums)
    if (s >= threshold) ++hits;

  McBeta out;
  out.threshold = threshold;
  out.est.num_samples = N;
  out.est.estimate = static_cast<double>(hits) / static_cast<double>(N);
  out.est.stderr_ =
      std::sqrt(out.est.estimate * (1.0 - out.est.estimate) / static_cast<double>(N));
  return out;
}

ConcentrationResult concentration_from_sums(std::span<const double> block_sums, long n,
                                            double d, double c_x, double delta) {
  if (!(delta > 0.0)) throw Error(Errc::bad_argument, "delta must be > 0");
  ConcentrationResult r;
  double nn = static_cast<double>(n);
  std::int64_t hits = 0;
  for (double s : block_sums)
    if (std::abs(s / nn - d) >= delta) ++hits;
  auto N = static_cast<std::int64_t>(block_sums.size());
  r.empirical.num_samples = N;
  r.empirical.estimate = static_cast<double>(hits) / static_cast<double>(N);
  r.empirical.stderr_ = std::sqrt(r.empirical.estimate * (1.0 - r.empirical.estimate) /
                                  static_cast<double>(N));
  if (c_x == 0.0) {
    // the bounded-difference constant vanishes; report the vacuous bound
    r.degenerate = true;
    r.bound = 1.0;
  } else {
    r.bound = std::exp(-nn * delta * delta / (2.0 * c_x * c_x));
  }
  r.pass = r.empirical.estimate <= r.bound + 3.0 * r.empirical.stderr_;
  return r;
}

ConcentrationResult concentration_check(const HypothesisPair& pair, long n, double delta,
                                        const McConfig& config) {
  std::vector<double> sums = sample_llr_sums(pair, n, Hypothesis::P, config);
  return concentration_from_sums(sums, n, pair.d(), pair.c_x(), delta);
}

}  // namespace bht
