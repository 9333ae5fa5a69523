#include "fracdiff/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include "fracdiff/format.hpp"

namespace fracdiff {

double rel_error_pct(const FieldGrid& u, const FieldGrid& ref) {
  double num = 0.0;
  double den = 0.0;
  const auto a = u.data();
  const auto b = ref.data();
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::fabs(a[i] - b[i]);
    den += std::fabs(b[i]);
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return 100.0 * num / den;
}

FieldGrid reference_run(SimConfig cfg) {
  cfg.strategy = Full{};
  return std::move(run(cfg).trajectory.final);
}

namespace {

struct Cell {
  MemoryStrategy strategy;
  double gamma;
  std::size_t gamma_index;
};

BenchRecord run_cell(const SimConfig& base, const Cell& cell, const FieldGrid& ref,
                     int repeat, std::mutex& log_mutex) {
  BenchRecord rec;
  rec.strategy = strategy_tag(cell.strategy);
  rec.param = strategy_param(cell.strategy);
  rec.gamma = cell.gamma;
  rec.steps = base.steps;
  try {
    SimConfig cfg = base;
    cfg.gamma = cell.gamma;
    cfg.strategy = cell.strategy;
    std::vector<double> times;
    std::optional<RunResult> last;
    for (int r = 0; r < std::max(repeat, 1); ++r) {
      last.emplace(run(cfg));
      times.push_back(last->wall_seconds);
    }
    std::sort(times.begin(), times.end());
    rec.wall_time_s = times[(times.size() - 1) / 2];
    rec.rel_error_pct = rel_error_pct(last->trajectory.final, ref);
    rec.nodes_stored = static_cast<std::int64_t>(last->peak_nodes);
    rec.ok = true;
  } catch (const std::exception& e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec.wall_time_s = nan;
    rec.rel_error_pct = nan;
    rec.nodes_stored = 0;
    rec.ok = false;
    std::lock_guard<std::mutex> lock(log_mutex);
    std::cerr << "bench cell failed (" << rec.strategy << ", param=" << fmt_real(rec.param)
              << ", gamma=" << fmt_real(rec.gamma) << "): " << e.what() << '\n';
  }
  return rec;
}

}  // namespace

std::vector<BenchRecord> sweep(const SimConfig& base,
                               const std::vector<MemoryStrategy>& strategies,
                               const std::vector<double>& gammas,
                               const SweepOptions& opt) {
  std::vector<double> gs = gammas;
  if (gs.empty()) gs.push_back(base.gamma);

  // Full-memory baselines, one per gamma.
  std::vector<FieldGrid> refs;
  refs.reserve(gs.size());
  for (double g : gs) {
    SimConfig cfg = base;
    cfg.gamma = g;
    refs.push_back(reference_run(cfg));
  }

  std::vector<Cell> cells;
  for (const auto& s : strategies)
    for (std::size_t gi = 0; gi < gs.size(); ++gi) cells.push_back({s, gs[gi], gi});

  std::vector<BenchRecord> records(cells.size());
  std::mutex log_mutex;
  auto worker_body = [&](std::size_t i) {
    records[i] = run_cell(base, cells[i], refs[cells[i].gamma_index], opt.repeat, log_mutex);
  };

  const int jobs = std::max(opt.jobs, 1);
  if (jobs == 1 || cells.size() <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) worker_body(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(jobs), cells.size());
    pool.reserve(n);
    for (std::size_t t = 0; t < n; ++t)
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) break;
          worker_body(i);
        }
      });
    for (auto& th : pool) th.join();
  }

  std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    if (a.strategy != b.strategy) return a.strategy < b.strategy;
    if (a.param != b.param) return a.param < b.param;
    return a.gamma < b.gamma;
  });
  return records;
}

void write_bench_csv(std::span<const BenchRecord> records, std::ostream& os) {
  os << "strategy,param,gamma,steps,wall_time_s,rel_error_pct,nodes_stored\n";
  for (const auto& r : records) {
    os << r.strategy << ',' << fmt_real(r.param) << ',' << fmt_real(r.gamma) << ','
       << r.steps << ',' << fmt_real(r.wall_time_s) << ',' << fmt_real(r.rel_error_pct)
       << ',' << r.nodes_stored << '\n';
  }
}

}  // namespace fracdiff
