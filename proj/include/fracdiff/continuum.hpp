#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fracdiff/weights.hpp"

namespace fracdiff {

/// Continuous extension of psi by linear interpolation between integer lags.
/// Exact at integers. r must lie within the table; larger r throws
/// std::out_of_range.
double psi_linear(double gamma, double r, const PsiTable& table);

/// Continuous extension by the gamma-function form,
///   Psi(gamma, r) = Re{ (-1)^r Gamma(2-gamma) / (Gamma(r+1) Gamma(2-gamma-r)) }
/// with (-1)^r read on the principal branch, i.e. cos(pi r). Exact at integer
/// r. Poles of Gamma(2-gamma-r) give 0 (the limit value); the gamma = 2
/// numerator pole at non-integer r is a true singularity and returns a signed
/// infinity. Oscillates between integer points, crossing zero at every
/// half-integer.
double psi_gamma_real(double gamma, double r);

/// Rational-polynomial extension Psi(r) = P(r)/Q(r) with deg P = num_order,
/// deg Q = den_order, q0 = 1, constrained to interpolate psi(gamma, m) at
/// m = 0..num_order+den_order.
struct RationalFit {
  double gamma = 0.0;
  std::vector<double> num;  // p0..p_alpha
  std::vector<double> den;  // q0 = 1, q1..q_beta

  double eval(double r) const;
  double denominator(double r) const;
  int num_order() const noexcept { return static_cast<int>(num.size()) - 1; }
  int den_order() const noexcept { return static_cast<int>(den.size()) - 1; }
};

/// Solves the square linear system P(m) - psi(m) Q(m) = 0, m = 0..alpha+beta,
/// with q0 = 1. Requires den_order > num_order and gamma != 1 (the all-zero
/// tail makes the system singular), and the table must cover the constraint
/// points. Throws FitFailure when the system is singular or the solution
/// misses the 1e-8 constraint residual; throws FitRejected when the fitted
/// denominator has a real root inside [0, alpha+beta].
RationalFit fit_rational(double gamma, int num_order, int den_order,
                         const PsiTable& table);

/// Ordered lag abscissae r0 = 0 < r1 < ... < rq = k.
struct MemoryMesh {
  std::vector<double> lags;

  bool operator==(const MemoryMesh&) const = default;
};

/// Thins the full integer lag mesh by the local curvature of the past-history
/// product g(r): a lag m in (1, k) survives when the central second
/// difference |g(m+1) - 2 g(m) + g(m-1)| is at least `threshold`. Lags 0, 1,
/// and k are always retained. threshold = 0 keeps every lag.
MemoryMesh build_mesh(const std::function<double(double)>& history, std::int64_t k,
                      double threshold);

/// Per-abscissa quadrature weights of the mesh rule: a width-1 cell
/// contributes its left value, a wider cell the trapezoid of its endpoints,
/// and the final abscissa carries a closing unit-width cell so that on the
/// full integer mesh the rule reproduces the (k+1)-term discrete sum exactly.
std::vector<double> quadrature_weights(const MemoryMesh& mesh);

/// Approximation of the memory integral over lags [0, k]:
/// sum_i w_i Psi(r_i) f(r_i) with the weights above. On the full integer mesh
/// this equals the discrete Grunwald-Letnikov sum sum_m psi(m) f(m).
double memory_integral(const std::function<double(double)>& psi_cont,
                       const std::function<double(double)>& history,
                       const MemoryMesh& mesh);

}  // namespace fracdiff
