#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "streampack/gk_summary.hpp"

namespace streampack {

/// One distinct item size of a high-multiplicity instance.
struct SizeClass {
  double size;
  std::int64_t count;
};

/// High-multiplicity bin packing instance: distinct sizes, non-increasing,
/// each with a positive multiplicity.
struct RoundedInstance {
  std::vector<SizeClass> entries;

  std::size_t sigma() const noexcept { return entries.size(); }
  std::int64_t total_items() const noexcept;
  double total_size() const noexcept;
  /// Expand into individual items, non-increasing.
  std::vector<double> expand() const;

  /// Collapse a list of item sizes into sorted distinct classes.
  static RoundedInstance from_items(std::span<const double> items);
  /// Sort non-increasingly, merge equal sizes and drop zero counts.
  void normalize();
};

enum class RoundingMode { Simple, Geometric };

enum class ItemClass { Small, Big };

/// Items of size at most epsilon are small. Throws InputError outside (0, 1].
ItemClass classify_item(double size, double epsilon);

/// Number of geometric size groups, ceil(log2(1 / epsilon)).
int geometric_group_count(double epsilon);

/// Group j holds sizes in (2^-(j+1), 2^-j], clamped to [0, groups - 1].
int geometric_group_of(double size, int groups);

/// Streams big items into quantile summaries and builds the rounded instance.
///
/// Simple mode keeps one summary at precision epsilon^2 / 4. Geometric mode
/// splits items by size scale into geometric_group_count(epsilon) groups, each
/// with its own summary at precision epsilon / 8.
class BigItemRounder {
 public:
  /// epsilon must lie in (0, 1/3].
  BigItemRounder(double epsilon, RoundingMode mode);

  /// size must exceed epsilon and be at most 1.
  void insert(double size);

  RoundedInstance build() const;

  double epsilon() const noexcept { return epsilon_; }
  RoundingMode mode() const noexcept { return mode_; }
  /// Group count k of the geometric scheme (reported in both modes).
  int k() const noexcept { return k_; }
  double precision() const noexcept;
  std::int64_t items() const noexcept { return items_; }
  const std::vector<GKSummary>& groups() const noexcept { return groups_; }
  std::vector<std::int64_t> group_counts() const;
  /// Tuples held across all summaries.
  std::size_t stored_entries() const noexcept;

  /// Rounded instance of a single group (geometric mode) or of the whole stream.
  RoundedInstance build_group(std::size_t group) const;

 private:
  double epsilon_;
  RoundingMode mode_;
  int k_;
  std::int64_t items_ = 0;
  std::vector<GKSummary> groups_;
};

/// Instance from the extracted (value, rank upper bound) pairs: u_{j+1} - u_j
/// copies of a_j for j < q, plus one copy of a_q.
RoundedInstance instance_from_ranked(std::span<const RankedValue> ranked);

RoundedInstance round_simple(std::span<const double> big_stream, double epsilon);
RoundedInstance round_geometric(std::span<const double> big_stream, double epsilon);

}  // namespace streampack
