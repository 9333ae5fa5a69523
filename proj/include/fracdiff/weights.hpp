#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fracdiff {

/// Precomputed Grunwald-Letnikov weight sequence psi(gamma, m), m = 0..n.
///
/// psi(gamma, m) = (-1)^m C(1-gamma, m) and is built by the recursion
/// psi(m) = -psi(m-1) (2 - gamma - m) / m, which multiplies by a factor of
/// magnitude <= 1 for every m >= 1 and so stays numerically benign out to
/// arbitrarily large m. Immutable after construction; safe to share across
/// concurrent simulation workers.
class PsiTable {
 public:
  PsiTable(double gamma, std::vector<double> values)
      : gamma_(gamma), values_(std::move(values)) {}

  double gamma() const noexcept { return gamma_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t m) const { return values_[m]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  double gamma_;
  std::vector<double> values_;
};

/// One application of the recursion: psi(gamma, m) from psi(gamma, m-1).
/// Requires m >= 1.
double psi_next(double prev, double gamma, std::int64_t m);

/// Builds the weight table for m = 0..n via the recursion.
/// Throws ValidationError unless 0 < gamma <= 2 and n >= 0.
PsiTable psi_table(double gamma, std::int64_t n);

/// Direct evaluation of psi(gamma, m) = (-1)^m Gamma(2-gamma) / (m! Gamma(2-gamma-m))
/// through log-gamma with explicit sign tracking, so it reaches m ~ 1e4 without
/// overflowing Gamma or the factorial. Denominator poles (gamma = 1, m >= 1)
/// give 0; the gamma = 2 numerator/denominator pole pair has limit 1.
///
/// Independent of the recursion path; used as its oracle.
double psi_direct(double gamma, std::int64_t m);

}  // namespace fracdiff
