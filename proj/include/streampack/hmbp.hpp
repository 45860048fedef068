#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "streampack/error.hpp"
#include "streampack/rounding.hpp"

namespace streampack {

/// Capacity slack for every "fits in a unit bin" comparison.
inline constexpr double kCapacityTol = 1e-9;

/// Contents of one bin: counts[i] items of instance size class i.
struct Pattern {
  std::vector<std::int64_t> counts;

  double fill(const RoundedInstance& inst) const;
  bool empty() const noexcept;
  bool operator==(const Pattern&) const = default;
};

/// A pattern used by `uses` identical bins.
struct PatternUse {
  Pattern pattern;
  std::int64_t uses;
  double fill;
};

struct PackingSolution {
  std::vector<PatternUse> patterns;

  std::int64_t bins_used() const noexcept;
  /// s(B) for every bin, bins of the same pattern adjacent.
  std::vector<double> fill_levels() const;
};

enum class Solver { Ffd, GilmoreGomory, Exact };

std::string_view solver_name(Solver s) noexcept;
/// Accepts "ffd", "gg" and "exact"; throws ConfigError otherwise.
Solver parse_solver(std::string_view name);

/// Raised when column generation hits its iteration cap. Carries the rounded
/// solution of the last restricted master, which is still a valid packing.
class SolverLimitError : public Error {
 public:
  SolverLimitError(const std::string& what, PackingSolution incumbent)
      : Error(what), incumbent_(std::move(incumbent)) {}
  const PackingSolution& incumbent() const noexcept { return incumbent_; }

 private:
  PackingSolution incumbent_;
};

/// Throws InputError when a size is outside (0, 1] or a count is negative.
void validate_instance(const RoundedInstance& inst);

/// Every size class covered at least `count` times and each pattern fits.
bool is_valid_packing(const RoundedInstance& inst, const PackingSolution& sol);

/// First fit decreasing on the expanded instance. Identical items are placed in
/// runs, so the cost is polynomial in sigma rather than in the item count.
PackingSolution solve_ffd(const RoundedInstance& inst);

struct ColumnGenerationOptions {
  int max_iterations = 20000;
  int refactor_period = 50;
};

/// Optimal restricted master of the cutting-stock LP after column generation.
struct CuttingStockLp {
  double value = 0.0;
  /// Lower bound on the LP optimum; equals value when converged.
  double lower_bound = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<Pattern> columns;
  /// Basic pattern columns with their (positive) LP values.
  std::vector<std::pair<Pattern, double>> basic;
  std::vector<double> duals;
};

CuttingStockLp solve_cutting_stock_lp(const RoundedInstance& inst,
                                      const ColumnGenerationOptions& opts = {});

/// Value of the cutting-stock LP relaxation (a lower bound on the optimum).
double lp_lower_bound(const RoundedInstance& inst);

/// Rounds up the basic LP solution, or returns first fit decreasing when that
/// uses fewer bins. At most ceil(LP) + sigma bins.
/// Throws SolverLimitError if column generation does not converge.
PackingSolution solve_gilmore_gomory(const RoundedInstance& inst,
                                     const ColumnGenerationOptions& opts = {});

/// Branch-and-bound optimum. Throws OracleScaleError above item_limit items.
PackingSolution solve_exact_packing(const RoundedInstance& inst, std::size_t item_limit = 24);
std::int64_t solve_exact(const RoundedInstance& inst, std::size_t item_limit = 24);

PackingSolution solve(const RoundedInstance& inst, Solver solver);

}  // namespace streampack
