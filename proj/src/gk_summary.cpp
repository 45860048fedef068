#include "streampack/gk_summary.hpp"

#include <algorithm>
#include <cmath>

#include "streampack/error.hpp"

namespace streampack {

GKSummary::GKSummary(double precision) : precision_(precision) {
  if (!(precision > 0.0 && precision < 1.0))
    throw ConfigError("quantile precision must lie in (0, 1)");
  compress_period_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(1.0 / (2.0 * precision))));
}

std::int64_t GKSummary::band() const noexcept {
  const auto b = static_cast<std::int64_t>(std::floor(2.0 * precision_ * static_cast<double>(count_)));
  return std::max<std::int64_t>(1, b);
}

void GKSummary::insert(double value) {
  if (!std::isfinite(value)) throw InputError("quantile summary accepts finite values only");

  // Stable placement: after every stored value >= the new one.
  const auto pos = std::upper_bound(tuples_.begin(), tuples_.end(), value,
                                    [](double v, const GKTuple& t) { return v > t.value; });
  GKTuple fresh{value, 1, 0};
  // An interior value's rank cannot exceed the maximum rank of its successor.
  if (pos != tuples_.begin() && pos != tuples_.end()) fresh.uncertainty = pos->gap + pos->uncertainty - 1;
  tuples_.insert(pos, fresh);
  ++count_;

  if (++since_compress_ >= compress_period_) {
    compress();
    since_compress_ = 0;
  }
}

void GKSummary::compress() {
  if (tuples_.size() < 3) return;
  const std::int64_t limit = band();
  // Walk from the tail; tuple i folds into its successor i + 1. The first and
  // last tuples are never removed.
  std::vector<GKTuple> kept;
  kept.reserve(tuples_.size());
  kept.push_back(tuples_.back());
  for (std::size_t i = tuples_.size() - 1; i-- > 0;) {
    GKTuple& succ = kept.back();
    const GKTuple& cur = tuples_[i];
    if (i > 0 && cur.gap + succ.gap + succ.uncertainty <= limit) {
      succ.gap += cur.gap;
    } else {
      kept.push_back(cur);
    }
  }
  std::reverse(kept.begin(), kept.end());
  tuples_ = std::move(kept);
}

double GKSummary::query(double phi) const {
  if (empty()) throw EmptySummaryError("quantile query on an empty summary");
  if (!(phi >= 0.0 && phi <= 1.0)) throw ConfigError("quantile phi must lie in [0, 1]");
  const double target = phi * static_cast<double>(count_);
  double best_err = INFINITY;
  double best = tuples_.front().value;
  std::int64_t rmin = 0;
  for (const GKTuple& t : tuples_) {
    rmin += t.gap;
    const double lo = static_cast<double>(rmin);
    const double hi = static_cast<double>(rmin + t.uncertainty);
    const double err = std::max(target - lo, hi - target);
    if (err < best_err) {
      best_err = err;
      best = t.value;
    }
  }
  return best;
}

std::vector<RankedValue> GKSummary::extract() const {
  if (empty()) throw EmptySummaryError("extract on an empty summary");
  std::vector<RankedValue> out(tuples_.size());
  std::int64_t rmin = 0;
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    rmin += tuples_[i].gap;
    out[i] = {tuples_[i].value, rmin + tuples_[i].uncertainty};
  }
  // True ranks increase along the tuple order, so a later tuple's maximum rank
  // also bounds every earlier one; the suffix minimum makes the bounds monotone.
  for (std::size_t i = out.size() - 1; i-- > 0;)
    out[i].rank_upper = std::min(out[i].rank_upper, out[i + 1].rank_upper);
  return out;
}

}  // namespace streampack
