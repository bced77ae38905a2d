#include "bht/schedule.hpp"

#include <cmath>
#include <sstream>

namespace bht {

EpsilonSchedule EpsilonSchedule::constant(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw Error(Errc::bad_argument, "constant schedule needs eps in (0,1)");
  return {Family::constant, eps, {}};
}
EpsilonSchedule EpsilonSchedule::reciprocal() { return {Family::reciprocal, 0.0, {}}; }
EpsilonSchedule EpsilonSchedule::power(double a) {
  if (!(a > 0.0)) throw Error(Errc::bad_argument, "power schedule needs a > 0");
  return {Family::power, a, {}};
}
EpsilonSchedule EpsilonSchedule::log_reciprocal() { return {Family::log_reciprocal, 0.0, {}}; }
EpsilonSchedule EpsilonSchedule::exponential(double r) {
  if (!(r > 0.0)) throw Error(Errc::bad_argument, "exponential schedule needs r > 0");
  return {Family::exponential, r, {}};
}
EpsilonSchedule EpsilonSchedule::explicit_list(std::vector<double> values) {
  if (values.empty()) throw Error(Errc::bad_argument, "explicit schedule needs values");
  for (double v : values)
    if (!(v > 0.0 && v < 1.0))
      throw Error(Errc::bad_argument, "explicit schedule values must be in (0,1)");
  return {Family::explicit_list, 0.0, std::move(values)};
}

long EpsilonSchedule::first_admissible() const {
  switch (family_) {
    case Family::constant:
    case Family::exponential:
    case Family::explicit_list: return 1;
    case Family::reciprocal:
    case Family::power: return 2;          // at n=1 the formula gives 1
    case Family::log_reciprocal: return 3;  // needs ln(n) > 1
  }
  return 1;
}

long EpsilonSchedule::last_admissible() const {
  return family_ == Family::explicit_list ? static_cast<long>(values_.size()) : -1;
}

bool EpsilonSchedule::admissible(long n) const {
  if (n < first_admissible()) return false;
  long last = last_admissible();
  return last < 0 || n <= last;
}

double EpsilonSchedule::epsilon_at(long n) const {
  if (!admissible(n))
    throw Error(Errc::not_admissible,
                to_string() + " is not admissible at n=" + std::to_string(n));
  switch (family_) {
    case Family::constant: return param_;
    case Family::reciprocal: return 1.0 / static_cast<double>(n);
    case Family::power: return std::exp(-param_ * std::log(static_cast<double>(n)));
    case Family::log_reciprocal: return 1.0 / std::log(static_cast<double>(n));
    case Family::exponential: return std::exp(-param_ * static_cast<double>(n));
    case Family::explicit_list: return values_[static_cast<std::size_t>(n - 1)];
  }
  throw Error(Errc::bad_argument, "unreachable");
}

bool EpsilonSchedule::is_subexponential() const {
  switch (family_) {
    case Family::constant:
    case Family::reciprocal:
    case Family::power:
    case Family::log_reciprocal: return true;
    case Family::exponential: return false;
    case Family::explicit_list:
      throw Error(Errc::undecidable, "sub-exponentiality of an explicit list is undecidable");
  }
  throw Error(Errc::bad_argument, "unreachable");
}

EpsilonSchedule EpsilonSchedule::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto need_num = [&]() {
    try {
      std::size_t used = 0;
      double v = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return v;
    } catch (const std::exception&) {
      throw Error(Errc::bad_argument, "bad schedule parameter: '" + arg + "'");
    }
  };
  if (head == "const") return constant(need_num());
  if (head == "recip") return reciprocal();
  if (head == "pow") return power(need_num());
  if (head == "logrecip") return log_reciprocal();
  if (head == "exp") return exponential(need_num());
  if (head == "list") {
    std::vector<double> vals;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        vals.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw Error(Errc::bad_argument, "bad list entry: '" + item + "'");
      }
    }
    return explicit_list(std::move(vals));
  }
  throw Error(Errc::bad_argument, "unknown schedule: '" + text + "'");
}

std::string EpsilonSchedule::to_string() const {
  std::ostringstream os;
  switch (family_) {
    case Family::constant: os << "const:" << param_; break;
    case Family::reciprocal: os << "recip"; break;
    case Family::power: os << "pow:" << param_; break;
    case Family::log_reciprocal: os << "logrecip"; break;
    case Family::exponential: os << "exp:" << param_; break;
    case Family::explicit_list:
      os << "list:";
      for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? "," : "") << values_[i];
      break;
  }
  return os.str();
}

}  // namespace bht
