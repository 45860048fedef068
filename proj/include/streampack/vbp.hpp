#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "streampack/estimator.hpp"
#include "streampack/vector_item.hpp"

namespace streampack {

struct VectorBinEstimate {
  BinEstimate scalar;          ///< result of the underlying scalar run(s)
  std::int64_t bins = 0;
  std::int64_t items = 0;
  std::int64_t zero_items = 0; ///< vectors with zero norm, counted but not packed
  double scalar_epsilon = 0.0;
  MemoryReport memory;
  /// Per-group bins of the group-split variant (empty for the l-inf reduction).
  std::vector<std::int64_t> group_bins;
};

/// l-infinity reduction: every vector becomes one scalar item of size ||v||_inf,
/// estimated at precision epsilon / d. Requires epsilon / d in (0, 1/3].
class VectorBinPackingEstimator {
 public:
  VectorBinPackingEstimator(std::size_t d, double epsilon, RoundingMode mode = RoundingMode::Geometric);
  void process(std::span<const double> v);
  VectorBinEstimate finalize(Solver solver) const;

  std::size_t dimension() const noexcept { return d_; }

 private:
  std::size_t d_;
  double epsilon_;
  BinPackingEstimator scalar_;
  std::int64_t items_ = 0;
  std::int64_t zeros_ = 0;
};

/// Group-split variant: d scalar estimators, one per argmax coordinate, each
/// packing by the largest coordinate. Requires epsilon in (0, 1/3].
class GroupSplitEstimator {
 public:
  GroupSplitEstimator(std::size_t d, double epsilon, RoundingMode mode = RoundingMode::Geometric);
  void process(std::span<const double> v);
  VectorBinEstimate finalize(Solver solver) const;

  const std::vector<BinPackingEstimator>& groups() const noexcept { return groups_; }

 private:
  std::size_t d_;
  double epsilon_;
  std::vector<BinPackingEstimator> groups_;
  std::int64_t items_ = 0;
  std::int64_t zeros_ = 0;
};

VectorBinEstimate vbp_estimate(std::span<const VectorItem> stream, std::size_t d, double epsilon,
                               Solver solver = Solver::GilmoreGomory,
                               RoundingMode mode = RoundingMode::Geometric);

std::int64_t vbp_group_split_estimate(std::span<const VectorItem> stream, std::size_t d, double epsilon,
                                      Solver solver = Solver::GilmoreGomory,
                                      RoundingMode mode = RoundingMode::Geometric);

/// Optimal number of unit bins for the vectors (branch and bound).
/// Throws OracleScaleError above item_limit items.
std::int64_t vbp_exact(std::span<const VectorItem> items, std::size_t item_limit = 12);

}  // namespace streampack
