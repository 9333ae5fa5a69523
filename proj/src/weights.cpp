#include "fracdiff/weights.hpp"

#include <cmath>
#include <iostream>

#include "fracdiff/errors.hpp"
#include "signed_gamma.hpp"

namespace fracdiff {

namespace {

void require_gamma(double gamma) {
  if (!std::isfinite(gamma) || !(gamma > 0.0) || !(gamma <= 2.0))
    throw ValidationError("gamma must lie in (0, 2], got " + std::to_string(gamma));
}

}  // namespace

double psi_next(double prev, double gamma, std::int64_t m) {
  return -prev * (2.0 - gamma - static_cast<double>(m)) / static_cast<double>(m);
}

PsiTable psi_table(double gamma, std::int64_t n) {
  require_gamma(gamma);
  if (n < 0) throw ValidationError("psi table order must be nonnegative");
  if (gamma == 2.0)
    std::cerr << "note: gamma=2 is the wave-equation limit, outside the validated "
                 "diffusion test matrix\n";
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  v[0] = 1.0;
  for (std::int64_t m = 1; m <= n; ++m)
    v[static_cast<std::size_t>(m)] = psi_next(v[static_cast<std::size_t>(m) - 1], gamma, m);
  return PsiTable(gamma, std::move(v));
}

double psi_direct(double gamma, std::int64_t m) {
  require_gamma(gamma);
  if (m < 0) throw ValidationError("psi index must be nonnegative");
  if (m == 0) return 1.0;
  // gamma = 2 puts poles in both Gamma(2-gamma) and Gamma(2-gamma-m); the
  // ratio's limit is (-1)^m m!, so psi(2, m) = 1 for every m.
  if (gamma == 2.0) return 1.0;
  const double g = 2.0 - gamma;  // in (0, 2)
  // gamma = 1: Gamma(1 - m) pole in the denominator for m >= 1.
  if (gamma == 1.0) return 0.0;

  const double lg_num = std::lgamma(g);
  const double lg_fac = std::lgamma(static_cast<double>(m) + 1.0);
  const double x = g - static_cast<double>(m);
  double lg_den;
  int sign_den;
  if (x > 0.0) {
    lg_den = std::lgamma(x);
    sign_den = 1;
  } else {
    // Reflection for Gamma(g - m) using sin(pi (g - m)) = (-1)^m sin(pi g),
    // which sidesteps argument reduction error at large m.
    const double sg = std::sin(std::numbers::pi * g);
    lg_den = std::log(std::numbers::pi) - std::log(std::fabs(sg)) - std::lgamma(1.0 - x);
    sign_den = ((m % 2 == 0) ? 1 : -1) * (sg > 0.0 ? 1 : -1);
  }
  const int sign = ((m % 2 == 0) ? 1 : -1) * sign_den;
  return sign * std::exp(lg_num - lg_fac - lg_den);
}

}  // namespace fracdiff
