#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "streampack/error.hpp"
#include "streampack/memory.hpp"
#include "streampack/sched_oracle.hpp"
#include "streampack/vector_item.hpp"

namespace streampack {

/// Big/small threshold for vector scheduling: min(eps/4, eps^2 / (12 ln(d^2/eps))),
/// falling back to eps/4 when the logarithm is not positive.
double gamma_of(double epsilon, std::size_t d);

/// Big jobs plus containers at the end of a stream, in input units.
struct VsSummary {
  std::size_t m = 0;
  std::size_t d = 0;
  double epsilon = 0.0;
  double gamma = 0.0;
  std::vector<VectorItem> big_jobs;
  /// Closed containers followed by the open one, if any.
  std::vector<VectorItem> containers;
  /// Per-dimension total of the whole stream.
  std::vector<double> loads;
  /// Per-dimension total of the containers.
  std::vector<double> container_loads;

  /// max_k loads[k] / m; 0 for an empty stream.
  double scale() const;
  std::vector<VectorItem> jobs() const;
  /// Containers divided by scale(), so that max_k loads[k] / m == 1.
  std::vector<VectorItem> normalized_containers() const;
};

/// Streaming state. Loads are kept unnormalized; the big/small threshold is
/// gamma * T with T = max_k L_k / m, re-evaluated after every job.
class ContainerState {
 public:
  /// m >= 1, d >= 1, epsilon in (0, 1]. gamma defaults to gamma_of(epsilon, d).
  ContainerState(std::size_t m, std::size_t d, double epsilon, std::optional<double> gamma = std::nullopt);

  void process_job(std::span<const double> v);
  VsSummary summarize() const;

  double threshold() const noexcept { return gamma_ * scale_; }
  double scale() const noexcept { return scale_; }
  double gamma() const noexcept { return gamma_; }
  const std::vector<double>& loads() const noexcept { return loads_; }
  std::vector<VectorItem> big_jobs() const;
  std::vector<VectorItem> closed_containers() const;
  const std::optional<VectorItem>& open_container() const noexcept { return open_; }
  std::int64_t jobs_seen() const noexcept { return jobs_; }
  MemoryReport memory() const noexcept { return accountant_.report(); }

 private:
  void rescale();
  void absorb_small(VectorItem v);
  void close_open_if_full();
  std::int64_t stored() const noexcept;

  std::size_t m_;
  std::size_t d_;
  double epsilon_;
  double gamma_;
  std::vector<double> loads_;
  double scale_ = 0.0;
  std::multimap<double, VectorItem> big_;
  std::multimap<double, VectorItem> closed_;
  std::optional<VectorItem> open_;
  std::int64_t jobs_ = 0;
  MemoryAccountant accountant_;
};

VsSummary summarize_stream(std::span<const VectorItem> stream, std::size_t m, double epsilon,
                           std::optional<double> gamma = std::nullopt);

/// Makespan of the summary instance: max_k L_k when m == 1, the exact optimum
/// when it has at most exact_limit jobs, greedy_min_makespan otherwise.
struct VsMakespan {
  double value = 0.0;
  double greedy = 0.0;
  bool exact = false;
};
VsMakespan summary_makespan(const VsSummary& summary, std::size_t exact_limit = 14);

struct Placement {
  Assignment assignment;
  /// Per-dimension bound max(1/2, L^C_k / m) + 2 eps + 4 gamma.
  std::vector<double> bound;
  /// Largest load[i][k] - bound[k] over machines and dimensions.
  double worst_excess = 0.0;
  std::uint64_t seed = 0;
  int attempts = 0;
  /// Containers the random phase handed to the greedy phase.
  std::size_t overflowed = 0;
};

class PlacementError : public Error {
 public:
  PlacementError(const std::string& what, Placement best) : Error(what), best_(std::move(best)) {}
  const Placement& best() const noexcept { return best_; }

 private:
  Placement best_;
};

/// Randomized two-phase placement of normalized containers: each container
/// goes to a uniformly random machine if that machine's first-phase load stays
/// within max(1/2, L^C_k/m) + eps + 2 gamma in every dimension, and otherwise to
/// the greedy phase. Seeds seed, seed+1, ... are tried until the total load
/// meets the bound; PlacementError after max_attempts.
Placement place_containers(std::span<const VectorItem> containers, std::size_t m, double epsilon, double gamma,
                           std::uint64_t seed, int max_attempts = 64);

/// Tight instance in d = m + 1 dimensions: m big jobs e_i + e_{m+1}, then
/// (m-1)/gamma groups of the m jobs gamma * e_i. The last job of each group also
/// carries 1e-12 in the first coordinate so the group's container closes on it.
/// Throws ConfigError unless m >= 2 and 1/gamma is an integer.
std::vector<VectorItem> tight_example(std::size_t m, double gamma);

/// Perturbation added by tight_example to the last job of each group.
inline constexpr double kTightNudge = 1e-12;

}  // namespace streampack
