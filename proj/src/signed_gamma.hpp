#pragma once

#include <cmath>
#include <numbers>

// Sign-tracked log-gamma pieces shared by the weight oracle and the
// continuous-domain extensions.

namespace fracdiff::detail {

// sin(pi x) / cos(pi x) with the integer part reduced exactly, avoiding the
// argument-reduction error of sin(M_PI * x) at large |x|.
inline double sin_pi(double x) {
  const double n = std::floor(x);
  const double s = std::sin(std::numbers::pi * (x - n));
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

inline double cos_pi(double x) {
  const double n = std::floor(x);
  const double c = std::cos(std::numbers::pi * (x - n));
  return std::fmod(n, 2.0) == 0.0 ? c : -c;
}

struct SignedLogGamma {
  double log_abs;
  int sign;
};

// log|Gamma(x)| and sign(Gamma(x)); x must not be a nonpositive integer.
inline SignedLogGamma signed_log_gamma(double x) {
  if (x > 0.0) return {std::lgamma(x), 1};
  // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
  const double s = sin_pi(x);
  return {std::log(std::numbers::pi) - std::log(std::fabs(s)) - std::lgamma(1.0 - x),
          s >= 0.0 ? 1 : -1};
}

}  // namespace fracdiff::detail
