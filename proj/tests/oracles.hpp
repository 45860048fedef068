#pragma once

// Brute-force reference solvers for the test suites. They share no code with
// the library so that agreement between the two is meaningful.

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

/// Positions a value can occupy in the stream sorted non-increasingly:
/// [#greater + 1, #greater-or-equal].
struct RankRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

/// sorted_desc must be sorted non-increasingly.
RankRange rank_range(const std::vector<double>& sorted_desc, double value);

/// Optimal bin count by dynamic programming over multisets of remaining items
/// (lexicographic minimum of (full bins, fill of the open bin)).
std::int64_t bin_packing_opt(const std::vector<double>& items, double tol = 1e-9);

/// Same DP on a (size, count) instance.
std::int64_t bin_packing_opt(const std::vector<double>& sizes, const std::vector<std::int64_t>& counts,
                             double tol = 1e-9);

/// Optimal makespan by enumerating every set partition of the jobs into at
/// most m machines.
double makespan_opt(const std::vector<Vec>& jobs, std::size_t m);

/// Optimal number of unit bins for vectors, by set-partition enumeration.
std::int64_t vector_bin_packing_opt(const std::vector<Vec>& items, double tol = 1e-9);

/// Deterministic helpers for seeded generators.
struct Rng {
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double uniform(double lo, double hi);
  std::size_t index(std::size_t n);
  std::mt19937_64 engine;
};

}  // namespace oracle
