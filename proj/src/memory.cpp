#include "fracdiff/memory.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

#include "fracdiff/continuum.hpp"
#include "fracdiff/errors.hpp"

namespace fracdiff {

std::string strategy_tag(const MemoryStrategy& s) {
  struct Tag {
    std::string operator()(const Full&) const { return "full"; }
    std::string operator()(const Short&) const { return "short"; }
    std::string operator()(const AdaptiveArithmetic&) const { return "adaptive"; }
    std::string operator()(const PowerLaw&) const { return "powerlaw"; }
    std::string operator()(const Smart&) const { return "smart"; }
  };
  return std::visit(Tag{}, s);
}

double strategy_param(const MemoryStrategy& s) {
  struct Param {
    double operator()(const Full&) const { return 0.0; }
    double operator()(const Short& v) const { return v.length; }
    double operator()(const AdaptiveArithmetic& v) const { return static_cast<double>(v.base); }
    double operator()(const PowerLaw& v) const { return static_cast<double>(v.reset); }
    double operator()(const Smart& v) const { return v.threshold; }
  };
  return std::visit(Param{}, s);
}

void validate_strategy(const MemoryStrategy& s, double dt) {
  if (const auto* sh = std::get_if<Short>(&s)) {
    if (!std::isfinite(sh->length) || !(sh->length > 0.0))
      throw ValidationError("short memory length L must be positive");
    if (short_window(sh->length, dt, std::numeric_limits<std::int64_t>::max()) < 1)
      throw ValidationError("short memory requires L/dt >= 1");
  } else if (const auto* aa = std::get_if<AdaptiveArithmetic>(&s)) {
    if (aa->base < 2)
      throw ValidationError("adaptive base interval a must be >= 2 (a = 1 degenerates "
                            "the interval boundaries)");
  } else if (const auto* pl = std::get_if<PowerLaw>(&s)) {
    if (pl->reset < 1) throw ValidationError("power-law reset interval eta must be >= 1");
  } else if (const auto* sm = std::get_if<Smart>(&s)) {
    if (!std::isfinite(sm->threshold) || !(sm->threshold > 0.0))
      throw ValidationError("smart strategy threshold must be positive");
  }
}

std::int64_t short_window(double length, double dt, std::int64_t k) {
  if (!(length > 0.0) || !(dt > 0.0))
    throw ValidationError("short_window needs length > 0 and dt > 0");
  if (k < 0) throw ValidationError("step index must be nonnegative");
  // Nudge before flooring so an exactly-representable ratio like 2.5/0.5
  // is not truncated by one ulp of rounding.
  const double ratio = length / dt;
  const auto w = static_cast<std::int64_t>(std::floor(ratio + 1e-9));
  return std::min(w, k);
}

std::vector<LagTerm> arithmetic_sample_points(std::int64_t base, std::int64_t k) {
  if (base < 2) throw ValidationError("adaptive base interval a must be >= 2");
  if (k < 0) throw ValidationError("step index must be nonnegative");

  std::vector<LagTerm> terms;
  const std::int64_t b = std::min(base, k);
  terms.reserve(static_cast<std::size_t>(b) + 16);
  for (std::int64_t n = 0; n <= b; ++n) terms.push_back({n, 1});
  std::int64_t next_uncovered = b + 1;

  // Interval i = [a^(i-1) + i, a^i], sampled every d = 2i - 1 starting on the
  // interval's first point. Each sampled median stands in for the d lags
  // centered on it, clamped against lags already represented and against k;
  // in the interval containing k the medians stop at k - i, leaving the last
  // lags to the trailing sum.
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t pow_prev = base;  // a^(i-1)
  for (std::int64_t i = 2; next_uncovered <= k; ++i) {
    const std::int64_t lo = pow_prev + i;
    if (lo > k) break;
    const std::int64_t pow_i = (pow_prev > kMax / base) ? kMax : pow_prev * base;
    const std::int64_t d = 2 * i - 1;
    const std::int64_t hi = std::min(pow_i, k - i);
    for (std::int64_t m = lo; m <= hi; m += d) {
      const std::int64_t cover_end = std::min(m + i - 1, k);
      if (cover_end < next_uncovered) continue;
      terms.push_back({m, cover_end - next_uncovered + 1});
      next_uncovered = cover_end + 1;
    }
    pow_prev = pow_i;
  }

  for (std::int64_t p = next_uncovered; p <= k; ++p) terms.push_back({p, 1});
  return terms;
}

// ---------------------------------------------------------------------------
// Power-law condensing store

PowerLawStore::PowerLawStore(std::int64_t reset) : reset_(reset) {
  if (reset < 1) throw ValidationError("power-law reset interval eta must be >= 1");
}

void PowerLawStore::insert(std::int64_t time_index, KernelField field) {
  if (!nodes_.empty() && time_index <= nodes_.back().time_index)
    throw std::logic_error("power-law store requires strictly increasing time indices");
  nodes_.push_back(WeightedNode{time_index, 1, std::move(field)});
  ++inserted_;
  condense();
}

void PowerLawStore::condense() {
  // While any weight class holds more than eta nodes, double the weight of
  // the class's oldest node and drop the second oldest. Doubling can push the
  // next class over the bound, so rescan until stable, smallest weight first.
  for (;;) {
    std::map<std::int64_t, int> count;
    for (const auto& n : nodes_) ++count[n.weight];
    std::int64_t target = -1;
    for (const auto& [w, c] : count) {
      if (c > reset_) {
        target = w;
        break;
      }
    }
    if (target < 0) break;

    auto first = nodes_.end();
    for (auto it = nodes_.begin(); it != nodes_.end(); ++it) {
      if (it->weight != target) continue;
      if (first == nodes_.end()) {
        first = it;
      } else {
        first->weight *= 2;
        nodes_.erase(it);
        break;
      }
    }
  }
}

std::vector<SummationTerm> PowerLawStore::terms() const {
  std::vector<SummationTerm> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back({n.time_index, n.weight});
  return out;
}

std::int64_t PowerLawStore::weight_sum() const {
  std::int64_t s = 0;
  for (const auto& n : nodes_) s += n.weight;
  return s;
}

// ---------------------------------------------------------------------------
// History stores

namespace {

void require_in_order(std::int64_t expected, std::int64_t got) {
  if (expected != got)
    throw std::logic_error("history store expected step " + std::to_string(expected) +
                           ", got " + std::to_string(got));
}

class FullStore final : public HistoryStore {
 public:
  explicit FullStore(std::int64_t hint) {
    if (hint > 0) fields_.reserve(static_cast<std::size_t>(hint));
  }

  void record(std::int64_t k, KernelField delta) override {
    require_in_order(static_cast<std::int64_t>(fields_.size()), k);
    fields_.push_back(std::move(delta));
  }

  void collect_terms(std::int64_t k, std::vector<HistoryTerm>& out) const override {
    out.clear();
    for (std::int64_t m = 0; m <= k; ++m)
      out.push_back({&fields_[static_cast<std::size_t>(k - m)], k - m, 1.0});
  }

  std::size_t footprint() const override { return fields_.size(); }

  std::vector<SummationTerm> stored_weights() const override {
    std::vector<SummationTerm> w;
    w.reserve(fields_.size());
    for (std::size_t i = 0; i < fields_.size(); ++i)
      w.push_back({static_cast<std::int64_t>(i), 1});
    return w;
  }

 protected:
  std::vector<KernelField> fields_;
};

class ShortStore final : public HistoryStore {
 public:
  ShortStore(double length, double dt)
      : window_(short_window(length, dt, std::numeric_limits<std::int64_t>::max())) {}

  void record(std::int64_t k, KernelField delta) override {
    require_in_order(next_, k);
    ++next_;
    fields_.push_back(std::move(delta));
    while (static_cast<std::int64_t>(fields_.size()) > window_ + 1) fields_.pop_front();
  }

  void collect_terms(std::int64_t k, std::vector<HistoryTerm>& out) const override {
    out.clear();
    const std::int64_t last = std::min(window_, k);
    for (std::int64_t m = 0; m <= last; ++m) {
      const auto& f = fields_[fields_.size() - 1 - static_cast<std::size_t>(m)];
      out.push_back({&f, k - m, 1.0});
    }
  }

  std::size_t footprint() const override { return fields_.size(); }

  std::vector<SummationTerm> stored_weights() const override {
    std::vector<SummationTerm> w;
    w.reserve(fields_.size());
    const std::int64_t oldest = next_ - static_cast<std::int64_t>(fields_.size());
    for (std::size_t i = 0; i < fields_.size(); ++i)
      w.push_back({oldest + static_cast<std::int64_t>(i), 1});
    return w;
  }

 private:
  std::int64_t window_;
  std::int64_t next_ = 0;
  std::deque<KernelField> fields_;
};

// Retains every field (the shifting sample grid touches all of them); only
// the term list is thinned.
class ArithmeticStore final : public HistoryStore {
 public:
  ArithmeticStore(std::int64_t base, std::int64_t hint) : base_(base) {
    if (hint > 0) fields_.reserve(static_cast<std::size_t>(hint));
  }

  void record(std::int64_t k, KernelField delta) override {
    require_in_order(static_cast<std::int64_t>(fields_.size()), k);
    fields_.push_back(std::move(delta));
  }

  void collect_terms(std::int64_t k, std::vector<HistoryTerm>& out) const override {
    out.clear();
    for (const auto& t : arithmetic_sample_points(base_, k))
      out.push_back({&fields_[static_cast<std::size_t>(k - t.lag)], k - t.lag,
                     static_cast<double>(t.multiplier)});
  }

  std::size_t footprint() const override { return fields_.size(); }

  std::vector<SummationTerm> stored_weights() const override {
    std::vector<SummationTerm> w;
    w.reserve(fields_.size());
    for (std::size_t i = 0; i < fields_.size(); ++i)
      w.push_back({static_cast<std::int64_t>(i), 1});
    return w;
  }

 private:
  std::int64_t base_;
  std::vector<KernelField> fields_;
};

class PowerLawHistory final : public HistoryStore {
 public:
  explicit PowerLawHistory(std::int64_t reset) : store_(reset) {}

  void record(std::int64_t k, KernelField delta) override {
    store_.insert(k, std::move(delta));
  }

  void collect_terms(std::int64_t /*k*/, std::vector<HistoryTerm>& out) const override {
    out.clear();
    const auto& nodes = store_.nodes();
    out.reserve(nodes.size());
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it)
      out.push_back({&it->field, it->time_index, static_cast<double>(it->weight)});
  }

  std::size_t footprint() const override { return store_.size(); }

  std::vector<SummationTerm> stored_weights() const override { return store_.terms(); }

 private:
  PowerLawStore store_;
};

// Experimental: thins the lag mesh per step by the curvature of the scalar
// history summary psi(m) * mean|delta^(k-m)| and converts the mesh quadrature
// into real-weighted terms. Retains every field, like the arithmetic store.
class SmartStore final : public HistoryStore {
 public:
  SmartStore(double threshold, const PsiTable* psi, std::int64_t hint)
      : threshold_(threshold), psi_(psi) {
    if (psi_ == nullptr) throw ValidationError("smart strategy needs a psi table");
    if (hint > 0) {
      fields_.reserve(static_cast<std::size_t>(hint));
      mean_abs_.reserve(static_cast<std::size_t>(hint));
    }
  }

  void record(std::int64_t k, KernelField delta) override {
    require_in_order(static_cast<std::int64_t>(fields_.size()), k);
    double s = 0.0;
    for (double v : delta.data()) s += std::fabs(v);
    mean_abs_.push_back(s / static_cast<double>(delta.size()));
    fields_.push_back(std::move(delta));
  }

  void collect_terms(std::int64_t k, std::vector<HistoryTerm>& out) const override {
    out.clear();
    const PsiTable& psi = *psi_;
    auto g = [&](double r) {
      const auto m = static_cast<std::int64_t>(std::llround(r));
      return psi[static_cast<std::size_t>(m)] * mean_abs_[static_cast<std::size_t>(k - m)];
    };
    const MemoryMesh mesh = build_mesh(g, k, threshold_);
    const std::vector<double> qw = quadrature_weights(mesh);
    out.reserve(mesh.lags.size());
    for (std::size_t i = 0; i < mesh.lags.size(); ++i) {
      const auto lag = static_cast<std::int64_t>(std::llround(mesh.lags[i]));
      out.push_back({&fields_[static_cast<std::size_t>(k - lag)], k - lag, qw[i]});
    }
  }

  std::size_t footprint() const override { return fields_.size(); }

  std::vector<SummationTerm> stored_weights() const override {
    std::vector<SummationTerm> w;
    w.reserve(fields_.size());
    for (std::size_t i = 0; i < fields_.size(); ++i)
      w.push_back({static_cast<std::int64_t>(i), 1});
    return w;
  }

 private:
  double threshold_;
  const PsiTable* psi_;
  std::vector<KernelField> fields_;
  std::vector<double> mean_abs_;
};

}  // namespace

std::unique_ptr<HistoryStore> make_store(const MemoryStrategy& strategy, double dt,
                                         std::int64_t steps_hint, const PsiTable* psi) {
  validate_strategy(strategy, dt);
  struct Build {
    double dt;
    std::int64_t hint;
    const PsiTable* psi;

    std::unique_ptr<HistoryStore> operator()(const Full&) const {
      return std::make_unique<FullStore>(hint);
    }
    std::unique_ptr<HistoryStore> operator()(const Short& s) const {
      return std::make_unique<ShortStore>(s.length, dt);
    }
    std::unique_ptr<HistoryStore> operator()(const AdaptiveArithmetic& s) const {
      return std::make_unique<ArithmeticStore>(s.base, hint);
    }
    std::unique_ptr<HistoryStore> operator()(const PowerLaw& s) const {
      return std::make_unique<PowerLawHistory>(s.reset);
    }
    std::unique_ptr<HistoryStore> operator()(const Smart& s) const {
      return std::make_unique<SmartStore>(s.threshold, psi, hint);
    }
  };
  return std::visit(Build{dt, steps_hint, psi}, strategy);
}

}  // namespace fracdiff
