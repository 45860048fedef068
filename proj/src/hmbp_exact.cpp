#include <algorithm>
#include <cmath>
#include <numeric>

#include "hmbp_internal.hpp"
#include "streampack/hmbp.hpp"

namespace streampack {

namespace {

class BinPackingSearch {
 public:
  BinPackingSearch(const RoundedInstance& inst) : inst_(inst) {
    for (std::size_t c = 0; c < inst.sigma(); ++c)
      for (std::int64_t k = 0; k < inst.entries[c].count; ++k) items_.push_back(c);
    // entries are non-increasing, so items_ already is.
    suffix_.assign(items_.size() + 1, 0.0);
    for (std::size_t i = items_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + size(i);
  }

  std::vector<std::size_t> solve(std::vector<std::size_t> incumbent, std::size_t incumbent_bins) {
    best_ = std::move(incumbent);
    best_bins_ = incumbent_bins;
    const auto lower = static_cast<std::size_t>(std::ceil(suffix_[0] - kCapacityTol));
    if (best_bins_ > lower) {
      assign_.assign(items_.size(), 0);
      loads_.clear();
      dfs(0, lower);
    }
    return best_;
  }

  std::size_t best_bins() const noexcept { return best_bins_; }

 private:
  double size(std::size_t item) const { return inst_.entries[items_[item]].size; }

  void dfs(std::size_t idx, std::size_t global_lower) {
    if (best_bins_ <= global_lower) return;
    if (idx == items_.size()) {
      if (loads_.size() < best_bins_) {
        best_bins_ = loads_.size();
        best_ = assign_;
      }
      return;
    }
    double free = 0.0;
    for (double l : loads_) free += 1.0 - l;
    const double overflow = suffix_[idx] - free;
    const std::size_t extra = overflow > kCapacityTol ? static_cast<std::size_t>(std::ceil(overflow - kCapacityTol)) : 0;
    if (loads_.size() + extra >= best_bins_) return;

    const double s = size(idx);
    for (std::size_t b = 0; b < loads_.size(); ++b) {
      if (loads_[b] + s > 1.0 + kCapacityTol) continue;
      bool seen = false;
      for (std::size_t e = 0; e < b && !seen; ++e) seen = loads_[e] == loads_[b];
      if (seen) continue;
      loads_[b] += s;
      assign_[idx] = b;
      dfs(idx + 1, global_lower);
      loads_[b] -= s;
      if (best_bins_ <= global_lower) return;
    }
    if (loads_.size() + 1 < best_bins_) {
      loads_.push_back(s);
      assign_[idx] = loads_.size() - 1;
      dfs(idx + 1, global_lower);
      loads_.pop_back();
    }
  }

  const RoundedInstance& inst_;
  std::vector<std::size_t> items_;
  std::vector<double> suffix_;
  std::vector<double> loads_;
  std::vector<std::size_t> assign_;
  std::vector<std::size_t> best_;
  std::size_t best_bins_ = 0;

  friend PackingSolution streampack::solve_exact_packing(const RoundedInstance&, std::size_t);
};

}  // namespace

PackingSolution solve_exact_packing(const RoundedInstance& inst, std::size_t item_limit) {
  validate_instance(inst);
  const auto n = static_cast<std::size_t>(inst.total_items());
  if (n > item_limit)
    throw OracleScaleError("exact bin packing limited to " + std::to_string(item_limit) + " items, got " +
                           std::to_string(n));
  if (n == 0) return {};

  BinPackingSearch search(inst);
  // FFD incumbent expressed as a per-item bin assignment.
  std::vector<std::size_t> ffd(n);
  std::vector<double> loads;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = search.size(i);
    std::size_t b = 0;
    while (b < loads.size() && loads[b] + s > 1.0 + kCapacityTol) ++b;
    if (b == loads.size()) loads.push_back(0.0);
    loads[b] += s;
    ffd[i] = b;
  }
  const std::vector<std::size_t> assign = search.solve(ffd, loads.size());
  const std::size_t bins = search.best_bins();

  std::vector<PatternUse> uses(bins, PatternUse{Pattern{std::vector<std::int64_t>(inst.sigma(), 0)}, 1, 0.0});
  for (std::size_t i = 0; i < n; ++i) uses[assign[i]].pattern.counts[search.items_[i]] += 1;
  return detail::canonicalize(inst, std::move(uses));
}

std::int64_t solve_exact(const RoundedInstance& inst, std::size_t item_limit) {
  return solve_exact_packing(inst, item_limit).bins_used();
}

}  // namespace streampack
