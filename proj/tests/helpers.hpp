#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fracdiff/lattice.hpp"
#include "fracdiff/memory.hpp"

namespace testutil {

using fracdiff::FieldGrid;
using fracdiff::LagTerm;

// Classical FTCS heat stepper, coded straight from the 5-point (3-point in
// 1D) stencil. Independent of the fractional solver path; serves as the
// gamma = 1 oracle.
inline FieldGrid classical_ftcs(const FieldGrid& u0, double alpha, double beta,
                                double dt, std::int64_t steps) {
  FieldGrid u = u0;
  const double fac = alpha * dt / (u.dx() * u.dx());
  for (std::int64_t s = 0; s < steps; ++s) {
    FieldGrid next(u.nx(), u.ny(), u.dx());
    if (u.dims() == 1) {
      for (std::int64_t j = 1; j <= u.nx() - 2; ++j)
        next.at(j, 0) = u.at(j, 0) +
                        fac * (u.at(j + 1, 0) - 2.0 * u.at(j, 0) + u.at(j - 1, 0)) -
                        beta * dt * u.at(j, 0);
    } else {
      for (std::int64_t l = 1; l <= u.ny() - 2; ++l)
        for (std::int64_t j = 1; j <= u.nx() - 2; ++j)
          next.at(j, l) = u.at(j, l) +
                          fac * (u.at(j + 1, l) + u.at(j - 1, l) - 4.0 * u.at(j, l) +
                                 u.at(j, l + 1) + u.at(j, l - 1)) -
                          beta * dt * u.at(j, l);
    }
    u = std::move(next);
  }
  return u;
}

// Exact-tiling check for adaptive sample points: walking the terms in order,
// each multiplier-w term must stand in for the next w uncovered lags and its
// representative lag must fall inside that block. Passing means the
// increments partition [0, k] exactly once.
inline bool tiles_exactly(const std::vector<LagTerm>& terms, std::int64_t k) {
  std::int64_t next = 0;
  for (const auto& t : terms) {
    if (t.multiplier < 1) return false;
    const std::int64_t lo = next;
    const std::int64_t hi = next + t.multiplier - 1;
    if (t.lag < lo || t.lag > hi) return false;
    next = hi + 1;
  }
  return next == k + 1;
}

// Uniform random values on cells at least `margin` from the grid edge.
inline FieldGrid random_grid(std::int64_t nx, std::int64_t ny, double dx, unsigned seed,
                             std::int64_t margin = 1) {
  FieldGrid u(nx, ny, dx);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  if (ny == 1) {
    for (std::int64_t j = margin; j <= nx - 1 - margin; ++j) u.at(j, 0) = dist(rng);
  } else {
    for (std::int64_t l = margin; l <= ny - 1 - margin; ++l)
      for (std::int64_t j = margin; j <= nx - 1 - margin; ++j) u.at(j, l) = dist(rng);
  }
  return u;
}

inline double max_abs_diff(const FieldGrid& a, const FieldGrid& b) {
  double m = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) m = std::max(m, std::fabs(da[i] - db[i]));
  return m;
}

}  // namespace testutil
