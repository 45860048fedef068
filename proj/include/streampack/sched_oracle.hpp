#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "streampack/vector_item.hpp"

namespace streampack {

/// Job-to-machine assignment with the resulting per-machine, per-dimension loads.
struct Assignment {
  std::vector<std::size_t> machine;
  std::vector<std::vector<double>> loads;
  double makespan = 0.0;
};

/// max over machines and dimensions of the load.
double makespan_of(const std::vector<std::vector<double>>& loads);

/// Loads and makespan of a given assignment.
Assignment evaluate_assignment(std::span<const VectorItem> jobs, std::span<const std::size_t> machine,
                               std::size_t m);

/// Jobs in arrival order, each to the machine minimizing the makespan after
/// placement; among those, the machine whose own peak load ends lowest, then
/// the lowest index. All jobs must share one dimension. Throws ConfigError for m == 0.
Assignment greedy_min_makespan(std::span<const VectorItem> jobs, std::size_t m);

/// Minimum makespan over all assignments of the jobs to m machines, by
/// branch and bound. Throws OracleScaleError above job_limit jobs.
double exact_vs_opt(std::span<const VectorItem> jobs, std::size_t m, std::size_t job_limit = 14);

/// Longest processing time first on identical machines.
double lpt_makespan(std::span<const double> jobs, std::size_t m);

/// Optimal makespan of scalar jobs. Throws OracleScaleError above job_limit jobs.
double exact_scalar_makespan(std::span<const double> jobs, std::size_t m, std::size_t job_limit = 16);

}  // namespace streampack
