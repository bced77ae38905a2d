#pragma once
#include <stdexcept>
#include <string>

namespace bht {

// Every domain failure in the library carries one of these codes so callers
// (and the CLI exit-code mapping) can dispatch without string matching.
enum class Errc {
  negative_mass,
  sum_out_of_tolerance,
  alphabet_too_small,
  support_mismatch,
  alphabet_size_mismatch,
  tilt_out_of_range,
  rate_out_of_range,
  target_unreachable,
  not_admissible,
  undecidable,
  enumeration_too_large,
  too_large,
  out_of_domain,
  not_found,
  oracle_infeasible,
  bad_model_file,
  bad_argument,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::negative_mass: return "NegativeMass";
    case Errc::sum_out_of_tolerance: return "SumOutOfTolerance";
    case Errc::alphabet_too_small: return "AlphabetTooSmall";
    case Errc::support_mismatch: return "SupportMismatch";
    case Errc::alphabet_size_mismatch: return "AlphabetSizeMismatch";
    case Errc::tilt_out_of_range: return "TiltOutOfRange";
    case Errc::rate_out_of_range: return "RateOutOfRange";
    case Errc::target_unreachable: return "TargetUnreachable";
    case Errc::not_admissible: return "NotAdmissible";
    case Errc::undecidable: return "Undecidable";
    case Errc::enumeration_too_large: return "EnumerationTooLarge";
    case Errc::too_large: return "TooLarge";
    case Errc::out_of_domain: return "OutOfDomain";
    case Errc::not_found: return "NotFound";
    case Errc::oracle_infeasible: return "OracleInfeasible";
    case Errc::bad_model_file: return "BadModelFile";
    case Errc::bad_argument: return "BadArgument";
  }
  return "Error";
}

// Shared numeric tolerances. Defaults follow the library-wide conventions;
// override per call where a function accepts a Tolerances argument.
struct Tolerances {
  double dist_sum = 1e-9;     // |sum(masses) - 1| allowed before rejection
  double bisection = 1e-12;   // target accuracy for scalar root finding
  double level_merge = 1e-12; // per-n LLR collision width in type enumeration
};

}  // namespace bht
