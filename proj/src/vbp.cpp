#include "streampack/vbp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "streampack/error.hpp"
#include "streampack/kernels.hpp"

namespace streampack {

double linf_norm(std::span<const double> v) noexcept {
  return v.empty() ? 0.0 : std::max(0.0, kernels::max_elem(v));
}

std::size_t argmax_coordinate(std::span<const double> v) noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

void check_unit_vector(std::span<const double> v, std::size_t d) {
  if (v.size() != d)
    throw InputError("expected " + std::to_string(d) + " coordinates, got " + std::to_string(v.size()));
  for (double x : v)
    if (!(x >= 0.0 && x <= 1.0)) throw InputError("vector coordinates must lie in [0, 1]");
}

namespace {

void check_dimension(std::size_t d) {
  if (d == 0) throw ConfigError("dimension must be at least 1");
}

double scalar_epsilon_for(std::size_t d, double epsilon) {
  check_dimension(d);
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
  const double delta = epsilon / static_cast<double>(d);
  if (delta > 1.0 / 3.0) throw ConfigError("epsilon / d must be at most 1/3");
  return delta;
}

}  // namespace

VectorBinPackingEstimator::VectorBinPackingEstimator(std::size_t d, double epsilon, RoundingMode mode)
    : d_(d), epsilon_(epsilon), scalar_(scalar_epsilon_for(d, epsilon), mode) {}

void VectorBinPackingEstimator::process(std::span<const double> v) {
  check_unit_vector(v, d_);
  ++items_;
  const double norm = linf_norm(v);
  if (norm == 0.0) {
    ++zeros_;
    return;
  }
  scalar_.process_item(norm);
}

VectorBinEstimate VectorBinPackingEstimator::finalize(Solver solver) const {
  VectorBinEstimate out;
  out.scalar = scalar_.finalize(solver);
  out.bins = out.scalar.bins;
  out.items = items_;
  out.zero_items = zeros_;
  out.scalar_epsilon = scalar_.epsilon();
  out.memory = scalar_.memory();
  out.memory.stream_length = items_;
  return out;
}

GroupSplitEstimator::GroupSplitEstimator(std::size_t d, double epsilon, RoundingMode mode)
    : d_(d), epsilon_(epsilon) {
  check_dimension(d);
  if (!(epsilon > 0.0 && epsilon <= 1.0 / 3.0)) throw ConfigError("epsilon must lie in (0, 1/3]");
  groups_.reserve(d);
  for (std::size_t i = 0; i < d; ++i) groups_.emplace_back(epsilon, mode);
}

void GroupSplitEstimator::process(std::span<const double> v) {
  check_unit_vector(v, d_);
  ++items_;
  const std::size_t g = argmax_coordinate(v);
  if (v[g] == 0.0) {
    ++zeros_;
    return;
  }
  groups_[g].process_item(v[g]);
}

VectorBinEstimate GroupSplitEstimator::finalize(Solver solver) const {
  VectorBinEstimate out;
  out.items = items_;
  out.zero_items = zeros_;
  out.scalar_epsilon = epsilon_;
  out.scalar.epsilon = epsilon_;
  for (const auto& g : groups_) {
    const BinEstimate e = g.finalize(solver);
    out.group_bins.push_back(e.bins);
    out.bins += e.bins;
    out.scalar.solution_bins += e.solution_bins;
    out.scalar.sigma += e.sigma;
    out.scalar.small_total += e.small_total;
    out.scalar.free_space += e.free_space;
    out.scalar.k = e.k;
    out.scalar.solver_used = e.solver_used;
    out.scalar.solver_converged = out.scalar.solver_converged && e.solver_converged;
    const MemoryReport m = g.memory();
    out.memory.stored_entries += m.stored_entries;
    out.memory.peak_entries += m.peak_entries;  // upper bound on the joint peak
  }
  out.scalar.bins = out.bins;
  out.memory.stream_length = items_;
  return out;
}

VectorBinEstimate vbp_estimate(std::span<const VectorItem> stream, std::size_t d, double epsilon, Solver solver,
                               RoundingMode mode) {
  VectorBinPackingEstimator est(d, epsilon, mode);
  for (const auto& v : stream) est.process(v);
  return est.finalize(solver);
}

std::int64_t vbp_group_split_estimate(std::span<const VectorItem> stream, std::size_t d, double epsilon,
                                      Solver solver, RoundingMode mode) {
  GroupSplitEstimator est(d, epsilon, mode);
  for (const auto& v : stream) est.process(v);
  return est.finalize(solver).bins;
}

namespace {

class VectorPackingSearch {
 public:
  VectorPackingSearch(std::vector<VectorItem> items, std::size_t d) : items_(std::move(items)), d_(d) {
    remaining_.assign(d_, 0.0);
    for (const auto& v : items_) kernels::add(remaining_, v);
  }

  std::int64_t solve() {
    // First fit as incumbent.
    std::vector<VectorItem> loads;
    for (const auto& v : items_) {
      bool placed = false;
      for (auto& l : loads) {
        if (kernels::max_sum(l, v) <= 1.0 + kCapacityTol) {
          kernels::add(l, v);
          placed = true;
          break;
        }
      }
      if (!placed) loads.push_back(v);
    }
    best_ = loads.size();
    lower_ = 0;
    for (double r : remaining_)
      lower_ = std::max<std::size_t>(lower_, static_cast<std::size_t>(std::ceil(r - kCapacityTol)));
    if (best_ > lower_) dfs(0);
    return static_cast<std::int64_t>(best_);
  }

 private:
  void dfs(std::size_t idx) {
    if (best_ <= lower_) return;
    if (idx == items_.size()) {
      best_ = std::min(best_, bins_.size());
      return;
    }
    // Per-dimension volume still to place versus free room in open bins.
    std::size_t extra = 0;
    for (std::size_t k = 0; k < d_; ++k) {
      double free = 0.0;
      for (const auto& b : bins_) free += 1.0 - b[k];
      const double over = remaining_[k] - free;
      if (over > kCapacityTol) extra = std::max(extra, static_cast<std::size_t>(std::ceil(over - kCapacityTol)));
    }
    if (bins_.size() + extra >= best_) return;

    const VectorItem& v = items_[idx];
    kernels::sub(remaining_, v);
    for (std::size_t b = 0; b < bins_.size(); ++b) {
      if (kernels::max_sum(bins_[b], v) > 1.0 + kCapacityTol) continue;
      bool seen = false;
      for (std::size_t e = 0; e < b && !seen; ++e) seen = bins_[e] == bins_[b];
      if (seen) continue;
      kernels::add(bins_[b], v);
      dfs(idx + 1);
      kernels::sub(bins_[b], v);
      if (best_ <= lower_) break;
    }
    if (bins_.size() + 1 < best_ && best_ > lower_) {
      bins_.push_back(v);
      dfs(idx + 1);
      bins_.pop_back();
    }
    kernels::add(remaining_, v);
  }

  std::vector<VectorItem> items_;
  std::size_t d_;
  std::vector<VectorItem> bins_;
  std::vector<double> remaining_;
  std::size_t best_ = 0;
  std::size_t lower_ = 0;
};

}  // namespace

std::int64_t vbp_exact(std::span<const VectorItem> items, std::size_t item_limit) {
  if (items.size() > item_limit)
    throw OracleScaleError("exact vector bin packing limited to " + std::to_string(item_limit) + " items");
  if (items.empty()) return 0;
  const std::size_t d = items.front().size();
  std::vector<VectorItem> kept;
  for (const auto& v : items) {
    check_unit_vector(v, d);
    if (linf_norm(v) > 0.0) kept.push_back(v);
  }
  if (kept.empty()) return 0;
  // Largest total volume first.
  std::stable_sort(kept.begin(), kept.end(), [](const VectorItem& a, const VectorItem& b) {
    return std::accumulate(a.begin(), a.end(), 0.0) > std::accumulate(b.begin(), b.end(), 0.0);
  });
  VectorPackingSearch search(std::move(kept), d);
  return search.solve();
}

}  // namespace streampack
