#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "streampack/hmbp.hpp"
#include "streampack/memory.hpp"
#include "streampack/rounding.hpp"

namespace streampack {

enum class EstimateCase { FitsInFreeSpace, Overflow };

std::string_view case_name(EstimateCase c) noexcept;

/// Streaming upper estimate on the optimal number of bins.
struct BinEstimate {
  std::int64_t bins = 0;
  EstimateCase regime = EstimateCase::FitsInFreeSpace;
  /// Bins in the packing of the rounded instance.
  std::int64_t solution_bins = 0;
  /// Free space available to small items, bins capped at 1 - epsilon.
  double free_space = 0.0;
  double small_total = 0.0;
  /// small_total - free_space in the overflow regime, else 0.
  double overflow = 0.0;
  std::size_t sigma = 0;
  int k = 0;
  double epsilon = 0.0;
  Solver solver_used = Solver::GilmoreGomory;
  /// False when the LP solver stopped at its iteration cap.
  bool solver_converged = true;
};

/// Sum over bins of max(0, 1 - epsilon - s(B)).
double free_space_W(const PackingSolution& solution, double epsilon);

/// Combine a packing of the rounded instance with the small-item volume.
BinEstimate estimate_from_solution(const PackingSolution& solution, double small_total, double epsilon);

/// One-pass bin packing estimator. Items of size at most epsilon only add to a
/// running total; bigger items feed the rounder.
class BinPackingEstimator {
 public:
  /// epsilon must lie in (0, 1/3].
  BinPackingEstimator(double epsilon, RoundingMode mode);

  /// size must lie in (0, 1]; throws InputError otherwise.
  void process_item(double size);
  template <typename Range>
  void process(const Range& sizes) {
    for (double s : sizes) process_item(s);
  }

  BinEstimate finalize(Solver solver) const;

  RoundedInstance rounded_instance() const { return rounder_.build(); }
  double small_total() const noexcept { return small_total_; }
  std::int64_t items_seen() const noexcept { return items_seen_; }
  std::int64_t small_items() const noexcept { return items_seen_ - rounder_.items(); }
  const BigItemRounder& rounder() const noexcept { return rounder_; }
  double epsilon() const noexcept { return rounder_.epsilon(); }
  /// Tuples across all summaries plus the small-total word.
  MemoryReport memory() const noexcept { return accountant_.report(); }

 private:
  BigItemRounder rounder_;
  double small_total_ = 0.0;
  std::int64_t items_seen_ = 0;
  MemoryAccountant accountant_;
};

struct RankEstimate {
  /// bins - 2N
  std::int64_t rank = 0;
  std::int64_t bins = 0;
  std::int64_t n = 0;
};

/// Bin packing stream of the rank reduction: two copies of every value, then
/// 2N items of size 1 - q. Throws InputError unless every value and q lie in (1/2, 2/3).
std::vector<double> rank_reduction_stream(std::span<const double> values, double q);

/// Estimate the number of values larger than q by running the full estimator
/// on rank_reduction_stream(values, q).
RankEstimate rank_reduction_demo(std::span<const double> values, double q, double epsilon,
                                 RoundingMode mode = RoundingMode::Geometric,
                                 Solver solver = Solver::Exact);

}  // namespace streampack
