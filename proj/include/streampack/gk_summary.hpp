#pragma once

#include <cstdint>
#include <vector>

namespace streampack {

/// One stored observation. Ranks count from the largest value (rank 1).
/// The minimum possible rank of `value` is the sum of gaps up to and including
/// this tuple; the maximum adds `uncertainty`.
struct GKTuple {
  double value;
  std::int64_t gap;
  std::int64_t uncertainty;
};

/// A stored value together with a valid upper bound on its rank.
struct RankedValue {
  double value;
  std::int64_t rank_upper;
};

/// Deterministic epsilon-approximate quantile summary (Greenwald-Khanna) over a
/// stream of doubles, ordered non-increasingly.
///
/// After every insert the tuples satisfy gap + uncertainty <= band(), where
/// band() = max(1, floor(2 * precision * count)). The first tuple is always the
/// stream maximum and the last the stream minimum. A full compress runs every
/// floor(1 / (2 * precision)) inserts.
class GKSummary {
 public:
  /// precision must lie in (0, 1); throws ConfigError otherwise.
  explicit GKSummary(double precision);

  /// Throws InputError for NaN or infinite values.
  void insert(double value);

  /// Returns a stored value whose rank lies within precision * count of
  /// phi * count. Throws EmptySummaryError when nothing was inserted and
  /// ConfigError when phi is outside [0, 1].
  double query(double phi) const;

  /// Stored values, non-increasing, with rank upper bounds u_1 = 1 <= ... <= u_q = count.
  /// u_j - band() is a valid lower bound on the rank of each value.
  std::vector<RankedValue> extract() const;

  double precision() const noexcept { return precision_; }
  std::int64_t count() const noexcept { return count_; }
  std::int64_t band() const noexcept;
  const std::vector<GKTuple>& tuples() const noexcept { return tuples_; }
  std::size_t size() const noexcept { return tuples_.size(); }
  bool empty() const noexcept { return count_ == 0; }

  /// Merge adjacent tuples whose combined band still fits.
  void compress();

 private:
  double precision_;
  std::int64_t count_ = 0;
  std::int64_t compress_period_;
  std::int64_t since_compress_ = 0;
  std::vector<GKTuple> tuples_;
};

}  // namespace streampack
