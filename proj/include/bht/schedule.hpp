#pragma once
#include <string>
#include <vector>

#include "bht/errors.hpp"

namespace bht {

// Vanishing Type I error sequence family. Evaluation is exact per formula;
// a schedule is admissible at n only where epsilon_n lands in (0,1).
class EpsilonSchedule {
 public:
  enum class Family { constant, reciprocal, power, log_reciprocal, exponential, explicit_list };

  static EpsilonSchedule constant(double eps);
  static EpsilonSchedule reciprocal();                 // 1/n
  static EpsilonSchedule power(double a);              // n^-a
  static EpsilonSchedule log_reciprocal();             // 1/ln(n), n >= 3
  static EpsilonSchedule exponential(double r);        // e^{-r n}
  static EpsilonSchedule explicit_list(std::vector<double> values);  // 1-based

  // Syntax: "const:0.1", "recip", "pow:0.1", "logrecip", "exp:0.2",
  // "list:0.5,0.3,0.2". Errors with BadArgument.
  static EpsilonSchedule parse(const std::string& text);
  std::string to_string() const;

  Family family() const { return family_; }
  double parameter() const { return param_; }

  // epsilon_n; throws NotAdmissible outside the family's range
  double epsilon_at(long n) const;
  bool admissible(long n) const;
  long first_admissible() const;
  // largest admissible n, or -1 when unbounded
  long last_admissible() const;

  // Whether (1/epsilon_n) is o(e^{rn}) for every r > 0. Analytic per family;
  // explicit lists are Undecidable.
  bool is_subexponential() const;

 private:
  EpsilonSchedule(Family f, double param, std::vector<double> values)
      : family_(f), param_(param), values_(std::move(values)) {}
  Family family_;
  double param_;
  std::vector<double> values_;
};

}  // namespace bht
