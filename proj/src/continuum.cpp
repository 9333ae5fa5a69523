#include "fracdiff/continuum.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracdiff/errors.hpp"
#include "fracdiff/format.hpp"
#include "signed_gamma.hpp"

namespace fracdiff {

namespace {

bool is_integer(double r) { return r == std::floor(r); }

void require_gamma_r(double gamma, double r) {
  if (!std::isfinite(gamma) || !(gamma > 0.0) || !(gamma <= 2.0))
    throw ValidationError("gamma must lie in (0, 2]");
  if (!std::isfinite(r) || r < 0.0) throw ValidationError("lag r must be nonnegative");
}

}  // namespace

double psi_linear(double gamma, double r, const PsiTable& table) {
  require_gamma_r(gamma, r);
  if (table.gamma() != gamma) throw ValidationError("psi table built for a different gamma");
  if (r > static_cast<double>(table.size()) - 1.0)
    throw std::out_of_range("lag r = " + fmt_real(r) + " beyond the psi table");
  const double fl = std::floor(r);
  const auto m = static_cast<std::size_t>(fl);
  if (fl == r) return table[m];
  return table[m] + (r - fl) * (table[m + 1] - table[m]);
}

double psi_gamma_real(double gamma, double r) {
  require_gamma_r(gamma, r);
  if (is_integer(r)) return psi_direct(gamma, static_cast<std::int64_t>(r));

  // Non-integer r from here on. Gamma(r+1) is finite and positive.
  const double c = detail::cos_pi(r);  // principal-branch real part of (-1)^r
  if (gamma == 2.0) {
    // Gamma(0) pole in the numerator alone: a true singularity.
    const auto den = detail::signed_log_gamma(-r);  // 2 - gamma - r = -r, non-integer
    return std::copysign(std::numeric_limits<double>::infinity(),
                         c * static_cast<double>(den.sign));
  }
  const double x = 2.0 - gamma - r;
  if (x <= 0.0 && is_integer(x)) return 0.0;  // denominator pole; limit value

  const auto den = detail::signed_log_gamma(x);
  const double mag =
      std::exp(std::lgamma(2.0 - gamma) - std::lgamma(r + 1.0) - den.log_abs);
  return c * static_cast<double>(den.sign) * mag;
}

double RationalFit::eval(double r) const {
  double p = 0.0;
  for (auto it = num.rbegin(); it != num.rend(); ++it) p = p * r + *it;
  return p / denominator(r);
}

double RationalFit::denominator(double r) const {
  double q = 0.0;
  for (auto it = den.rbegin(); it != den.rend(); ++it) q = q * r + *it;
  return q;
}

RationalFit fit_rational(double gamma, int num_order, int den_order,
                         const PsiTable& table) {
  if (!(gamma > 0.0) || !(gamma <= 2.0)) throw ValidationError("gamma must lie in (0, 2]");
  if (gamma == 1.0)
    throw ValidationError("gamma = 1 has an all-zero psi tail; the constraint system "
                          "is singular");
  if (num_order < 0) throw ValidationError("numerator order must be nonnegative");
  if (den_order <= num_order)
    throw ValidationError("denominator order must exceed the numerator order");
  if (table.gamma() != gamma) throw ValidationError("psi table built for a different gamma");
  const int constraints = num_order + den_order;  // m = 0..M, M = alpha + beta
  if (static_cast<int>(table.size()) < constraints + 1)
    throw ValidationError("psi table must cover m = 0.." + std::to_string(constraints));

  // Row m: sum_t p_t m^t - psi(m) sum_{s>=1} q_s m^s = psi(m).
  const int n = constraints + 1;
  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd b(n);
  for (int m = 0; m < n; ++m) {
    const double mm = m;
    const double psim = table[static_cast<std::size_t>(m)];
    double power = 1.0;
    int col = 0;
    for (int t = 0; t <= num_order; ++t) {
      A(m, col++) = power;
      power *= mm;
    }
    power = mm;
    for (int s = 1; s <= den_order; ++s) {
      A(m, col++) = -psim * power;
      power *= mm;
    }
    b(m) = psim;
  }

  const auto lu = A.fullPivLu();
  if (!lu.isInvertible())
    throw FitFailure("singular rational-fit system for gamma=" + fmt_real(gamma) +
                     ", alpha=" + std::to_string(num_order) +
                     ", beta=" + std::to_string(den_order));
  const Eigen::VectorXd x = lu.solve(b);

  RationalFit fit;
  fit.gamma = gamma;
  fit.num.assign(x.data(), x.data() + num_order + 1);
  fit.den.resize(static_cast<std::size_t>(den_order) + 1);
  fit.den[0] = 1.0;
  for (int s = 1; s <= den_order; ++s) fit.den[static_cast<std::size_t>(s)] = x(num_order + s);

  for (int m = 0; m < n; ++m) {
    const double res = fit.eval(m) - table[static_cast<std::size_t>(m)];
    if (!std::isfinite(res) || std::fabs(res) > 1e-8)
      throw FitFailure("rational fit residual " + fmt_real(res) + " at m=" +
                       std::to_string(m) + " for gamma=" + fmt_real(gamma) +
                       ", alpha=" + std::to_string(num_order) +
                       ", beta=" + std::to_string(den_order));
  }

  // Sign-change scan for denominator roots over the constraint range.
  const int samples = 4096;
  double prev = fit.denominator(0.0);
  for (int i = 1; i <= samples; ++i) {
    const double r = static_cast<double>(constraints) * i / samples;
    const double q = fit.denominator(r);
    if (q == 0.0 || prev == 0.0 || (q < 0.0) != (prev < 0.0))
      throw FitRejected("rational fit denominator has a root near r=" + fmt_real(r) +
                        " inside [0, " + std::to_string(constraints) + "]");
    prev = q;
  }
  return fit;
}

MemoryMesh build_mesh(const std::function<double(double)>& history, std::int64_t k,
                      double threshold) {
  if (k < 0) throw ValidationError("step index must be nonnegative");
  if (!(threshold >= 0.0)) throw ValidationError("mesh threshold must be nonnegative");
  MemoryMesh mesh;
  if (k == 0) {
    mesh.lags = {0.0};
    return mesh;
  }
  std::vector<double> g(static_cast<std::size_t>(k) + 1);
  for (std::int64_t m = 0; m <= k; ++m) g[static_cast<std::size_t>(m)] = history(static_cast<double>(m));

  mesh.lags.push_back(0.0);
  if (k >= 1) mesh.lags.push_back(1.0);
  for (std::int64_t m = 2; m <= k - 1; ++m) {
    const auto i = static_cast<std::size_t>(m);
    const double curv = g[i + 1] - 2.0 * g[i] + g[i - 1];
    if (std::fabs(curv) >= threshold) mesh.lags.push_back(static_cast<double>(m));
  }
  if (k >= 2) mesh.lags.push_back(static_cast<double>(k));
  return mesh;
}

std::vector<double> quadrature_weights(const MemoryMesh& mesh) {
  const std::size_t q = mesh.lags.size();
  std::vector<double> w(q, 0.0);
  if (q == 0) return w;
  for (std::size_t i = 0; i + 1 < q; ++i) {
    const double width = mesh.lags[i + 1] - mesh.lags[i];
    if (width == 1.0) {
      w[i] += 1.0;  // left rectangle keeps the discrete-sum correspondence
    } else {
      w[i] += 0.5 * width;
      w[i + 1] += 0.5 * width;
    }
  }
  w[q - 1] += 1.0;  // closing unit cell for the oldest lag
  return w;
}

double memory_integral(const std::function<double(double)>& psi_cont,
                       const std::function<double(double)>& history,
                       const MemoryMesh& mesh) {
  const std::vector<double> w = quadrature_weights(mesh);
  double total = 0.0;
  for (std::size_t i = 0; i < mesh.lags.size(); ++i) {
    const double r = mesh.lags[i];
    total += w[i] * (psi_cont(r) * history(r));
  }
  return total;
}

}  // namespace fracdiff
