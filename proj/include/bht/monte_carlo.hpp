#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "bht/distribution.hpp"

namespace bht {

enum class Hypothesis { P, Q };

// Outputs are bit-identical for a given (seed, num_samples) no matter how
// stream_chunks partitions the work: every draw is indexed by an absolute
// counter (see CounterRng).
struct McConfig {
  std::int64_t num_samples = 2'500'000;  // reproduction-run default
  std::uint64_t seed = 0;
  int stream_chunks = 1;
};

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;  // sqrt(p(1-p)/N) for proportions
  std::int64_t num_samples = 0;
};

// num_samples i.i.d. draws of the length-n total LLR under the chosen
// hypothesis; symbols sampled by inverse CDF from a cumulative table.
std::vector<double> sample_llr_sums(const HypothesisPair& pair, long n, Hypothesis hyp,
                                    const McConfig& config);

struct McBeta {
  McEstimate est;
  double threshold = 0.0;  // empirical epsilon-quantile of the P-stream
};

// Plug-in estimate of the optimal Type II error: the threshold is the lower
// empirical epsilon-quantile of P-stream LLR sums (fraction strictly below
// it stays <= epsilon), the estimate is the fraction of an independent
// Q-stream at or above it. Estimates the pure threshold test's error; on a
// lattice that can sit one boundary level above the deterministic optimum.
McBeta estimate_beta(const HypothesisPair& pair, long n, double epsilon,
                     const McConfig& config);

struct ConcentrationResult {
  McEstimate empirical;  // fraction of P-blocks with |D_hat - d| >= delta
  double bound = 0.0;    // exp(-n delta^2 / (2 c_x^2))
  bool pass = false;
  bool degenerate = false;  // c_x = 0: bound reported as 1, check vacuous
};

ConcentrationResult concentration_check(const HypothesisPair& pair, long n, double delta,
                                        const McConfig& config);

// Same check against already-drawn block sums (block_sums[i] = total LLR of
// block i); lets callers score several deltas on one sample set.
ConcentrationResult concentration_from_sums(std::span<const double> block_sums, long n,
                                            double d, double c_x, double delta);

}  // namespace bht
