#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "bht/distribution.hpp"
#include "bht/log_value.hpp"

namespace bht {

// One type class: all length-n sequences sharing a symbol-count vector. The
// multinomial count lives in log domain; exact_count is populated when the
// coefficient fits a 64-bit integer.
struct TypeGroup {
  std::vector<int> counts;  // per support symbol, in pair.support() order
  double log_count = 0.0;
  std::optional<std::uint64_t> exact_count;
  double log_p_seq = 0.0;  // ln P^n(one sequence)
  double log_q_seq = 0.0;
};

// Equal-LLR slice of X^n: every member sequence has the same total LLR, so
// the Neyman-Pearson region grows level by level. Groups are ordered by
// ascending per-sequence p-mass then lexicographic count vector; that order
// is the documented boundary tie-break.
struct LLRLevel {
  double llr_total = 0.0;  // sum over the block, nats
  std::vector<TypeGroup> groups;
};

// All type classes of the pair's support, grouped into levels sorted by
// descending llr_total. Types whose llr_total differ by <= merge_tol * n
// share a level. Throws EnumerationTooLarge when the number of type classes
// exceeds cap.
std::vector<LLRLevel> enumerate_levels(const HypothesisPair& pair, long n,
                                       std::size_t cap = 5'000'000,
                                       double merge_tol = Tolerances{}.level_merge);

struct NPResult {
  LogValue beta;                    // optimal deterministic Type II error
  double achieved_type1 = 0.0;      // realized Type I error, <= budget
  double threshold_llr = 0.0;       // boundary level's total LLR
  double boundary_fraction = 0.0;   // sequences taken / sequences at boundary
  // Pure threshold test {llr_sum >= threshold_llr}: the whole boundary level
  // is accepted instead of the minimal slice. Also respects the budget.
  LogValue beta_threshold;
  double type1_threshold = 0.0;
};

// Greedy optimum over precomputed levels: accepts levels in descending LLR
// order until the accumulated P-mass reaches 1 - epsilon; inside the boundary
// level takes groups by ascending p-mass and the minimal sequence count from
// the final group. Type I accumulates in linear domain, Type II in log domain.
NPResult np_from_levels(const std::vector<LLRLevel>& levels, double epsilon);

NPResult beta_exact(const HypothesisPair& pair, long n, double epsilon,
                    std::size_t cap = 5'000'000);

// Exhaustive minimum of Q^n(A) over every acceptance set with P^n(A^c) <=
// epsilon. Requires support_size^n <= 20. Threshold fields are NaN (the
// optimum need not be an LLR region a priori).
NPResult beta_bruteforce(const HypothesisPair& pair, long n, double epsilon);

// P^n(|llr_total/n - center| >= delta), summed exactly over type classes.
double llr_tail_probability(const std::vector<LLRLevel>& levels, long n, double center,
                            double delta);

}  // namespace bht
