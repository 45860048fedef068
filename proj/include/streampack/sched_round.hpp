#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "streampack/memory.hpp"
#include "streampack/vector_item.hpp"

namespace streampack {

/// Integer i with x in ((1+eps)^i, (1+eps)^(i+1)]; x > 0.
int power_bucket(double x, double epsilon);

/// ceil(log_{1+eps}(1/eps)).
int makespan_bucket_span(double epsilon);

/// Scalar makespan summary: k + 1 counters for the buckets q-k .. q anchored at
/// the largest job, plus the volume of jobs below (1+eps)^(q-k).
class ScalarSchedSummary {
 public:
  /// epsilon in (0, 1].
  explicit ScalarSchedSummary(double epsilon);

  /// p > 0 and finite; InputError otherwise.
  void process(double p);

  /// max(M_B, V/m + eps * p_max), M_B the makespan of the rounded big jobs
  /// (exact up to exact_limit jobs, LPT above). EmptySummaryError before the first job.
  double estimate(std::size_t m, std::size_t exact_limit = 16) const;

  /// Rounded big jobs: (1+eps)^(i+1) repeated L_i times.
  std::vector<double> rounded_big_jobs() const;

  double epsilon() const noexcept { return epsilon_; }
  int k() const noexcept { return k_; }
  int q() const noexcept { return q_; }
  double p_max() const noexcept { return p_max_; }
  double small_volume() const noexcept { return s_; }
  /// Counter for bucket q - k + j, j in [0, k].
  const std::vector<std::int64_t>& counters() const noexcept { return counters_; }
  std::int64_t counter(int bucket) const;
  std::int64_t jobs_seen() const noexcept { return jobs_; }
  std::int64_t folded_jobs() const noexcept { return folded_; }
  std::int64_t small_arrivals() const noexcept { return small_arrivals_; }
  bool empty() const noexcept { return jobs_ == 0; }
  MemoryReport memory() const noexcept { return accountant_.report(); }

 private:
  double epsilon_;
  int k_;
  int q_ = 0;
  double p_max_ = 0.0;
  double s_ = 0.0;
  std::vector<std::int64_t> counters_;
  std::int64_t jobs_ = 0;
  std::int64_t folded_ = 0;
  std::int64_t small_arrivals_ = 0;
  MemoryAccountant accountant_;
};

/// Zero every coordinate at most delta * ||v||_inf.
VectorItem zero_small_coords(std::span<const double> v, double delta);

/// Exponent vector of a job type. INT_MIN stands for a zero coordinate of a
/// big type, INT_MAX for a zero coordinate of a small type.
using TypeKey = std::vector<int>;

inline constexpr int kZeroBig = INT_MIN;
inline constexpr int kZeroSmall = INT_MAX;

/// Vector type summary: big jobs (norm > delta * p_max, delta = eps/d) counted
/// per coordinate exponent vector, small jobs accumulated by norm per relative
/// exponent vector.
class VectorTypeSummary {
 public:
  /// d >= 1, epsilon in (0, 1].
  VectorTypeSummary(std::size_t d, double epsilon);

  /// Coordinates in [0, 1]; small coordinates are zeroed first.
  void process(std::span<const double> v);

  /// Jobs rebuilt from the types; see estimate().
  std::vector<VectorItem> reconstruct() const;

  /// Exact makespan of reconstruct() on m machines. OracleScaleError when the
  /// reconstruction has more than job_limit jobs.
  double estimate(std::size_t m, std::size_t job_limit = 14) const;

  const std::map<TypeKey, std::int64_t>& big_types() const noexcept { return big_; }
  const std::map<TypeKey, double>& small_types() const noexcept { return small_; }
  double delta() const noexcept { return delta_; }
  double epsilon() const noexcept { return epsilon_; }
  double p_max() const noexcept { return p_max_; }
  std::size_t dimension() const noexcept { return d_; }
  std::int64_t jobs_seen() const noexcept { return jobs_; }
  std::int64_t zero_jobs() const noexcept { return zeros_; }
  /// ceil(log_{1+eps}(1/delta^2))^d.
  double big_type_bound() const;
  MemoryReport memory() const noexcept { return accountant_.report(); }

 private:
  void demote_expired();

  std::size_t d_;
  double epsilon_;
  double delta_;
  double p_max_ = 0.0;
  std::map<TypeKey, std::int64_t> big_;
  std::map<TypeKey, double> small_;
  std::int64_t jobs_ = 0;
  std::int64_t zeros_ = 0;
  MemoryAccountant accountant_;
};

}  // namespace streampack
