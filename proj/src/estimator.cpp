#include "streampack/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "streampack/error.hpp"

namespace streampack {

std::string_view case_name(EstimateCase c) noexcept {
  return c == EstimateCase::FitsInFreeSpace ? "fits_in_free_space" : "overflow";
}

double free_space_W(const PackingSolution& solution, double epsilon) {
  double w = 0.0;
  for (const auto& p : solution.patterns)
    w += static_cast<double>(p.uses) * std::max(0.0, 1.0 - epsilon - p.fill);
  return w;
}

BinEstimate estimate_from_solution(const PackingSolution& solution, double small_total, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0 / 3.0)) throw ConfigError("epsilon must lie in (0, 1/3]");
  BinEstimate est;
  est.epsilon = epsilon;
  est.solution_bins = solution.bins_used();
  est.free_space = free_space_W(solution, epsilon);
  est.small_total = small_total;
  if (small_total <= est.free_space) {
    est.regime = EstimateCase::FitsInFreeSpace;
    est.bins = est.solution_bins;
  } else {
    est.regime = EstimateCase::Overflow;
    est.overflow = small_total - est.free_space;
    // Guard against 10.0 / 0.9 landing a hair above an integer.
    const double extra = est.overflow / (1.0 - epsilon);
    est.bins = est.solution_bins + static_cast<std::int64_t>(std::ceil(extra - 1e-12));
  }
  return est;
}

BinPackingEstimator::BinPackingEstimator(double epsilon, RoundingMode mode) : rounder_(epsilon, mode) {}

void BinPackingEstimator::process_item(double size) {
  if (classify_item(size, rounder_.epsilon()) == ItemClass::Small)
    small_total_ += size;
  else
    rounder_.insert(size);
  ++items_seen_;
  accountant_.observe(static_cast<std::int64_t>(rounder_.stored_entries()) + 1);
}

BinEstimate BinPackingEstimator::finalize(Solver solver) const {
  const RoundedInstance inst = rounder_.build();
  PackingSolution solution;
  bool converged = true;
  try {
    solution = solve(inst, solver);
  } catch (const SolverLimitError& e) {
    solution = e.incumbent();
    converged = false;
  }
  BinEstimate est = estimate_from_solution(solution, small_total_, rounder_.epsilon());
  est.sigma = inst.sigma();
  est.k = rounder_.k();
  est.solver_used = solver;
  est.solver_converged = converged;
  return est;
}

std::vector<double> rank_reduction_stream(std::span<const double> values, double q) {
  const auto inside = [](double v) { return v > 0.5 && v < 2.0 / 3.0; };
  if (!inside(q)) throw InputError("rank query must lie in (1/2, 2/3)");
  std::vector<double> stream;
  stream.reserve(values.size() * 4);
  for (double a : values) {
    if (!inside(a)) throw InputError("rank reduction values must lie in (1/2, 2/3)");
    stream.push_back(a);
    stream.push_back(a);
  }
  // 1 - q rounded to 15 significant digits, so decimal inputs such as 0.58
  // give the decimal complement 0.42 rather than 0.42000000000000004.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", 1.0 - q);
  stream.insert(stream.end(), 2 * values.size(), std::strtod(buf, nullptr));
  return stream;
}

RankEstimate rank_reduction_demo(std::span<const double> values, double q, double epsilon, RoundingMode mode,
                                 Solver solver) {
  const std::vector<double> stream = rank_reduction_stream(values, q);
  BinPackingEstimator est(epsilon, mode);
  est.process(stream);
  const BinEstimate result = est.finalize(solver);
  const auto n = static_cast<std::int64_t>(values.size());
  return {result.bins - 2 * n, result.bins, n};
}

}  // namespace streampack
