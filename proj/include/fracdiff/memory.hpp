#pragma once

#include <cstdint>
#include <list>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "fracdiff/lattice.hpp"
#include "fracdiff/weights.hpp"

namespace fracdiff {

// ---------------------------------------------------------------------------
// Strategy selection

struct Full {
  bool operator==(const Full&) const = default;
};

/// Truncate the backward sum to the most recent window of `length` time units.
struct Short {
  double length = 0.0;  // memory length L; requires L > 0 and L/dt >= 1
  bool operator==(const Short&) const = default;
};

/// Sample the history on intervals [a^(i-1)+i, a^i] at stride 2i-1, weighting
/// each sampled median by the lags it stands in for. Retains every field.
struct AdaptiveArithmetic {
  std::int64_t base = 0;  // base interval a >= 2
  bool operator==(const AdaptiveArithmetic&) const = default;
};

/// Condensing store: at most `reset` nodes per weight class; overflow doubles
/// the oldest node of the class and discards its neighbor, leaving
/// O(log2 N) retained fields.
struct PowerLaw {
  std::int64_t reset = 0;  // reset interval eta >= 1
  bool operator==(const PowerLaw&) const = default;
};

/// Experimental: evaluates the memory term through an adaptive lag mesh and
/// the continuous-domain quadrature (see continuum.hpp). Retains every field.
struct Smart {
  double threshold = 0.0;  // curvature threshold > 0
  bool operator==(const Smart&) const = default;
};

using MemoryStrategy = std::variant<Full, Short, AdaptiveArithmetic, PowerLaw, Smart>;

std::string strategy_tag(const MemoryStrategy& s);    // "full", "short", ...
double strategy_param(const MemoryStrategy& s);       // L, a, eta, threshold; 0 for full

/// Throws ValidationError if the strategy parameters are out of domain
/// (Short needs length > 0 and length/dt >= 1, AdaptiveArithmetic base >= 2,
/// PowerLaw reset >= 1, Smart threshold > 0).
void validate_strategy(const MemoryStrategy& s, double dt);

// ---------------------------------------------------------------------------
// Lag enumeration

/// Largest lag entering the short-memory sum at step k: min(floor(L/dt), k).
std::int64_t short_window(double length, double dt, std::int64_t k);

/// A backward-summation term expressed as a lag m from the current step,
/// standing in for `multiplier` consecutive lags.
struct LagTerm {
  std::int64_t lag = 0;
  std::int64_t multiplier = 1;
  bool operator==(const LagTerm&) const = default;
};

/// Sample points of the arithmetic adaptive scheme at step k, ascending by
/// lag: the base interval [0, min(a,k)] term by term, then for each interval
/// [a^(i-1)+i, a^i] the medians m = a^(i-1) + (2i-1)eta - i + 1 subject to
/// m <= k - i in the interval containing k, then every remaining trailing lag.
///
/// The increments represented by the terms tile [0, k] exactly once: the lags
/// a sample stands in for are clamped against already-covered lags and against
/// k, so the multipliers always sum to k + 1.
std::vector<LagTerm> arithmetic_sample_points(std::int64_t base, std::int64_t k);

// ---------------------------------------------------------------------------
// Power-law condensing store

/// A term of the power-law backward sum: psi(gamma, k - time_index) *
/// multiplier * delta^(time_index).
struct SummationTerm {
  std::int64_t time_index = 0;
  std::int64_t multiplier = 1;
  bool operator==(const SummationTerm&) const = default;
};

/// One retained history entry.
struct WeightedNode {
  std::int64_t time_index;
  std::int64_t weight;
  KernelField field;
};

/// Ordered linked list of weighted history nodes. Insertion appends a
/// weight-1 node; whenever a weight class holds more than `reset` nodes, the
/// class's oldest node has its weight doubled and the second-oldest node is
/// removed, cascading until every class (including newly created ones) is
/// within bound. The weight sum always equals the number of inserted steps.
class PowerLawStore {
 public:
  explicit PowerLawStore(std::int64_t reset);

  /// Appends delta^(time_index) with weight 1 and condenses. Indices must be
  /// strictly increasing; anything else throws std::logic_error.
  void insert(std::int64_t time_index, KernelField field);

  /// One term per retained node, ascending time index.
  std::vector<SummationTerm> terms() const;

  const std::list<WeightedNode>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::int64_t reset() const noexcept { return reset_; }
  std::int64_t inserted() const noexcept { return inserted_; }
  std::int64_t weight_sum() const;

 private:
  void condense();

  std::int64_t reset_;
  std::int64_t inserted_ = 0;
  std::list<WeightedNode> nodes_;
};

// ---------------------------------------------------------------------------
// History store interface used by the marcher

/// A ready-to-sum term: multiplier applied to psi(gamma, k - time_index) *
/// (*field). Integer for the discrete strategies; the smart strategy carries
/// real quadrature weights.
struct HistoryTerm {
  const KernelField* field = nullptr;
  std::int64_t time_index = 0;
  double multiplier = 1.0;
};

/// Owns the retained kernel fields of one simulation. Single writer; term
/// enumeration happens between mutations. Field pointers handed out by
/// collect_terms stay valid until the next record().
class HistoryStore {
 public:
  virtual ~HistoryStore() = default;

  /// Records delta^k. Steps must arrive in order 0, 1, 2, ...
  virtual void record(std::int64_t k, KernelField delta) = 0;

  /// Fills `out` with the terms of the backward sum at step k, ascending lag.
  virtual void collect_terms(std::int64_t k, std::vector<HistoryTerm>& out) const = 0;

  /// Number of retained kernel fields.
  virtual std::size_t footprint() const = 0;

  /// Debug view: (time_index, weight) of every retained field.
  virtual std::vector<SummationTerm> stored_weights() const = 0;
};

/// Builds the store for a strategy. `steps_hint` pre-sizes retained storage;
/// `psi` must outlive the store and cover every lag when the strategy is
/// Smart (it is ignored otherwise).
std::unique_ptr<HistoryStore> make_store(const MemoryStrategy& strategy, double dt,
                                         std::int64_t steps_hint, const PsiTable* psi);

}  // namespace fracdiff
