#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fracdiff/marcher.hpp"

namespace fracdiff {

/// One (strategy, parameter, gamma) measurement against the full-memory
/// reference. `ok` is false for cells whose run failed; their measured
/// fields are NaN and the sweep continues.
struct BenchRecord {
  std::string strategy;
  double param = 0.0;
  double gamma = 0.0;
  std::int64_t steps = 0;
  double wall_time_s = 0.0;
  double rel_error_pct = 0.0;
  std::int64_t nodes_stored = 0;
  bool ok = true;
};

/// Relative L1 error as a percentage: 100 * sum|u - ref| / sum|ref|.
double rel_error_pct(const FieldGrid& u, const FieldGrid& ref);

/// Final field of cfg forced to the Full strategy; the error baseline.
FieldGrid reference_run(SimConfig cfg);

struct SweepOptions {
  int jobs = 1;    // worker threads for the strategy cells
  int repeat = 1;  // timing repeats per cell; the median wall time is kept
};

/// Runs every (strategy, gamma) cell against the per-gamma Full reference,
/// measuring the marching wall time, relative error, and peak retained-node
/// count. Error values are deterministic regardless of worker count; records
/// come back sorted by (strategy, param, gamma).
std::vector<BenchRecord> sweep(const SimConfig& base,
                               const std::vector<MemoryStrategy>& strategies,
                               const std::vector<double>& gammas,
                               const SweepOptions& opt = {});

/// CSV columns: strategy,param,gamma,steps,wall_time_s,rel_error_pct,nodes_stored
void write_bench_csv(std::span<const BenchRecord> records, std::ostream& os);

}  // namespace fracdiff
