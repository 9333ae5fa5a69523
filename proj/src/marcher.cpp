#include "fracdiff/marcher.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "fracdiff/errors.hpp"

namespace fracdiff {

void validate(const SimConfig& cfg) {
  if (!std::isfinite(cfg.gamma) || !(cfg.gamma > 0.0) || !(cfg.gamma <= 2.0))
    throw ValidationError("gamma must lie in (0, 2]");
  if (!std::isfinite(cfg.alpha) || cfg.alpha < 0.0)
    throw ValidationError("alpha must be nonnegative");
  if (!std::isfinite(cfg.beta) || cfg.beta < 0.0)
    throw ValidationError("beta must be nonnegative");
  if (!std::isfinite(cfg.dt) || !(cfg.dt > 0.0)) throw ValidationError("dt must be positive");
  if (!std::isfinite(cfg.dx) || !(cfg.dx > 0.0)) throw ValidationError("dx must be positive");
  if (cfg.steps < 0) throw ValidationError("steps must be nonnegative");
  if (cfg.snapshot_every < 0) throw ValidationError("snapshot_every must be nonnegative");
  if (cfg.nx < 3) throw ValidationError("nx must be at least 3");
  if (cfg.ny != 1 && cfg.ny < 3) throw ValidationError("ny must be 1 (1D) or at least 3");
  for (const auto& s : cfg.init) {
    const bool inside = cfg.ny == 1
                            ? (s.l == 0 && s.j >= 1 && s.j <= cfg.nx - 2)
                            : (s.j >= 1 && s.j <= cfg.nx - 2 && s.l >= 1 && s.l <= cfg.ny - 2);
    if (!inside)
      throw ValidationError("initial source at (" + std::to_string(s.j) + ", " +
                            std::to_string(s.l) + ") is on or outside the boundary");
  }
  validate_strategy(cfg.strategy, cfg.dt);
}

FieldGrid step(const FieldGrid& u, std::span<const HistoryTerm> terms,
               const PsiTable& psi, const SimConfig& cfg, std::int64_t k) {
  if (static_cast<std::int64_t>(psi.size()) <= k)
    throw std::logic_error("psi table too short: need lag " + std::to_string(k));
  for (const auto& t : terms)
    if (t.time_index < 0 || t.time_index > k)
      throw std::logic_error("history term outside [0, k]");

  const std::int64_t n = u.size();
  std::vector<double> mem(static_cast<std::size_t>(n), 0.0);
  for (const auto& t : terms) {
    const double c = psi[static_cast<std::size_t>(k - t.time_index)] * t.multiplier;
    if (c == 0.0) continue;
    const double* d = t.field->data().data();
    double* m = mem.data();
    for (std::int64_t i = 0; i < n; ++i) m[i] += c * d[i];
  }

  const double msum = cfg.alpha * std::pow(cfg.dt, cfg.gamma) / (cfg.dx * cfg.dx);
  const double decay = cfg.beta * cfg.dt;
  FieldGrid next(u.nx(), u.ny(), u.dx());
  if (u.dims() == 1) {
    for (std::int64_t j = 1; j <= u.nx() - 2; ++j)
      next.at(j, 0) = u.at(j, 0) + msum * mem[static_cast<std::size_t>(j)] - decay * u.at(j, 0);
  } else {
    for (std::int64_t l = 1; l <= u.ny() - 2; ++l)
      for (std::int64_t j = 1; j <= u.nx() - 2; ++j) {
        const auto idx = static_cast<std::size_t>(l * u.nx() + j);
        next.at(j, l) = u.at(j, l) + msum * mem[idx] - decay * u.at(j, l);
      }
  }
  return next;
}

RunResult run(const SimConfig& cfg, const StepObserver& observer) {
  validate(cfg);
  const PsiTable psi = psi_table(cfg.gamma, cfg.steps);
  FieldGrid u = make_initial(cfg.nx, cfg.ny, cfg.dx, cfg.init);

  const double ratio = cfg.alpha * std::pow(cfg.dt, cfg.gamma) / (cfg.dx * cfg.dx);
  const double limit = cfg.ny == 1 ? 0.5 : 0.25;
  if (ratio > limit)
    std::cerr << "warning: alpha*dt^gamma/dx^2 = " << ratio
              << " exceeds the explicit-scheme guardrail " << limit << '\n';

  auto store = make_store(cfg.strategy, cfg.dt, cfg.steps, &psi);
  std::vector<std::pair<std::int64_t, FieldGrid>> snapshots;
  if (cfg.snapshot_every > 0 && cfg.steps > 0) snapshots.emplace_back(0, u);

  std::vector<HistoryTerm> terms;
  std::size_t peak = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::int64_t k = 0; k < cfg.steps; ++k) {
    store->record(k, laplacian_kernel(u));
    store->collect_terms(k, terms);
    u = step(u, terms, psi, cfg, k);
    if (!u.finite())
      throw SolverError(k + 1, "non-finite field value after step " + std::to_string(k + 1) +
                                   " (instability; see the dt^gamma guardrail)");
    peak = std::max(peak, store->footprint());
    if (observer) observer(k, *store);
    if (cfg.snapshot_every > 0 && (k + 1) % cfg.snapshot_every == 0 && k + 1 < cfg.steps)
      snapshots.emplace_back(k + 1, u);
  }
  const auto t1 = std::chrono::steady_clock::now();

  return RunResult{Trajectory{std::move(snapshots), std::move(u)},
                   std::chrono::duration<double>(t1 - t0).count(), peak};
}

}  // namespace fracdiff
