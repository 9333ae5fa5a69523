#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fracdiff/lattice.hpp"
#include "fracdiff/memory.hpp"
#include "fracdiff/weights.hpp"

namespace fracdiff {

struct SimConfig {
  double gamma = 1.0;  // fractional order, (0, 2]
  double alpha = 1.0;  // diffusivity, length^2 / time^gamma
  double beta = 0.0;   // linear decay rate, 1/time
  double dt = 1.0;
  double dx = 1.0;
  std::int64_t nx = 0;
  std::int64_t ny = 1;  // 1 selects the 1D layout
  std::int64_t steps = 0;
  std::int64_t snapshot_every = 0;  // 0 disables intermediate snapshots
  std::vector<PointSource> init;
  MemoryStrategy strategy = Full{};
  std::string out_dir = "out";

  bool operator==(const SimConfig&) const = default;
};

/// Throws ValidationError on any out-of-domain field.
void validate(const SimConfig& cfg);

struct Trajectory {
  std::vector<std::pair<std::int64_t, FieldGrid>> snapshots;  // ordered by step
  FieldGrid final;                                            // state at step N
};

struct RunResult {
  Trajectory trajectory;
  double wall_seconds = 0.0;   // marching loop only
  std::size_t peak_nodes = 0;  // largest history footprint seen
};

/// Called after each completed step k (0-based) with the store state.
using StepObserver = std::function<void(std::int64_t k, const HistoryStore&)>;

/// One explicit step: u^(k+1) = u^k + dt [ alpha dt^(gamma-1)/dx^2 *
/// sum_terms psi(gamma, k - i) * w * delta^i - beta u^k ] on the interior,
/// zero boundary re-imposed. delta^k must already be recorded so the m = 0
/// term participates. The psi table must cover lag k.
FieldGrid step(const FieldGrid& u, std::span<const HistoryTerm> terms,
               const PsiTable& psi, const SimConfig& cfg, std::int64_t k);

/// Marches cfg.steps steps from the initial condition, recording each delta
/// into the strategy's store. Deterministic: identical cfg gives a
/// bit-identical trajectory. Non-finite values abort with SolverError naming
/// the step. Emits a stderr warning when alpha dt^gamma / dx^2 exceeds the
/// explicit-scheme guardrail (0.5 in 1D, 0.25 in 2D).
RunResult run(const SimConfig& cfg, const StepObserver& observer = {});

}  // namespace fracdiff
