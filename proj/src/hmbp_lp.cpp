#include <algorithm>
#include <cmath>
#include <numeric>

#include "hmbp_internal.hpp"
#include "streampack/hmbp.hpp"
#include "streampack/kernels.hpp"

namespace streampack {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;

// Bounded knapsack: maximize sum y_i c_i subject to sum s_i c_i <= 1 and
// 0 <= c_i <= upper_i. Depth-first search over items in ratio order with the
// fractional relaxation as the bound.
class PricingKnapsack {
 public:
  PricingKnapsack(const RoundedInstance& inst, const std::vector<std::int64_t>& upper)
      : inst_(inst), upper_(upper) {}

  struct Result {
    Pattern pattern;
    double value;
    // Upper bound on the best value; equals value when the search finished.
    double bound;
  };

  Result solve(const std::vector<double>& duals, std::int64_t node_limit = 20'000'000) {
    order_.clear();
    for (std::size_t i = 0; i < duals.size(); ++i)
      if (duals[i] > 1e-12 && upper_[i] > 0) order_.push_back(i);
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return duals[a] * inst_.entries[b].size > duals[b] * inst_.entries[a].size;
    });
    duals_ = &duals;
    current_.assign(duals.size(), 0);
    best_ = Pattern{std::vector<std::int64_t>(duals.size(), 0)};
    best_value_ = 0.0;
    nodes_ = 0;
    node_limit_ = node_limit;
    aborted_ = false;
    const double root_bound = relaxation(0, 1.0 + kCapacityTol);
    dfs(0, 1.0 + kCapacityTol, 0.0);
    return {best_, best_value_, aborted_ ? root_bound : best_value_};
  }

 private:
  double relaxation(std::size_t from, double cap) const {
    double v = 0.0;
    for (std::size_t k = from; k < order_.size() && cap > 0.0; ++k) {
      const std::size_t i = order_[k];
      const double s = inst_.entries[i].size;
      const double take = std::min(static_cast<double>(upper_[i]), cap / s);
      v += take * (*duals_)[i];
      cap -= take * s;
    }
    return v;
  }

  void dfs(std::size_t k, double cap, double value) {
    if (value > best_value_ + 1e-12) {
      best_value_ = value;
      best_.counts = current_;
    }
    if (k == order_.size() || aborted_) return;
    if (++nodes_ > node_limit_) {
      aborted_ = true;
      return;
    }
    if (value + relaxation(k, cap) <= best_value_ + 1e-12) return;
    const std::size_t i = order_[k];
    const double s = inst_.entries[i].size;
    const auto most = std::min(upper_[i], static_cast<std::int64_t>(std::floor(cap / s)));
    for (std::int64_t c = most; c >= 0; --c) {
      current_[i] = c;
      dfs(k + 1, cap - static_cast<double>(c) * s, value + static_cast<double>(c) * (*duals_)[i]);
      if (aborted_) break;
    }
    current_[i] = 0;
  }

  const RoundedInstance& inst_;
  const std::vector<std::int64_t>& upper_;
  const std::vector<double>* duals_ = nullptr;
  std::vector<std::size_t> order_;
  std::vector<std::int64_t> current_;
  Pattern best_;
  double best_value_ = 0.0;
  std::int64_t nodes_ = 0;
  std::int64_t node_limit_ = 0;
  bool aborted_ = false;
};

// Revised simplex on  min sum x_p  s.t.  A x - s = b,  x, s >= 0  with an
// explicit dense basis inverse. Variable ids: [0, sigma) are surplus columns,
// sigma + j is pattern column j. Bland's rule picks entering and leaving
// variables during degenerate stretches, so pivoting cannot cycle.
class RestrictedMaster {
 public:
  explicit RestrictedMaster(const RoundedInstance& inst) : inst_(inst), m_(inst.sigma()) {
    rhs_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) rhs_[i] = static_cast<double>(inst.entries[i].count);
    binv_.assign(m_ * m_, 0.0);
    xb_.assign(m_, 0.0);
    basis_.resize(m_);
    upper_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const double s = inst.entries[i].size;
      upper_[i] = std::min<std::int64_t>(
          inst.entries[i].count, static_cast<std::int64_t>(std::floor((1.0 + kCapacityTol) / s)));
      Pattern single{std::vector<std::int64_t>(m_, 0)};
      single.counts[i] = upper_[i];
      columns_.push_back(single);
      add_dense(single);
      basis_[i] = m_ + i;
      binv_[i * m_ + i] = 1.0 / static_cast<double>(upper_[i]);
      xb_[i] = rhs_[i] / static_cast<double>(upper_[i]);
    }
    // First-fit-decreasing patterns as a warm start for pricing.
    for (const auto& pu : solve_ffd(inst).patterns) {
      if (std::count_if(pu.pattern.counts.begin(), pu.pattern.counts.end(), [](auto c) { return c > 0; }) < 2)
        continue;
      columns_.push_back(pu.pattern);
      add_dense(pu.pattern);
    }
  }

  CuttingStockLp run(const ColumnGenerationOptions& opts) {
    PricingKnapsack pricing(inst_, upper_);
    CuttingStockLp out;
    int pivots_since_refactor = 0;
    int degenerate_streak = 0;
    std::vector<double> duals(m_);
    for (out.iterations = 0; out.iterations < opts.max_iterations; ++out.iterations) {
      compute_duals(duals);
      // Long runs of degenerate pivots switch to Bland's rule, which cannot cycle.
      std::size_t entering = find_entering(duals, degenerate_streak >= kBlandAfter);
      if (entering == kNone) {
        std::vector<double> positive(duals);
        for (double& y : positive) y = std::max(0.0, y);
        const auto priced = pricing.solve(positive);
        if (priced.value <= 1.0 + kReducedCostTol) {
          out.converged = priced.bound <= 1.0 + kReducedCostTol;
          out.lower_bound = farley_bound(positive, std::max(1.0, priced.bound));
          break;
        }
        columns_.push_back(priced.pattern);
        add_dense(priced.pattern);
        entering = m_ + columns_.size() - 1;
      }
      degenerate_streak = pivot(entering) > 1e-12 ? 0 : degenerate_streak + 1;
      if (++pivots_since_refactor >= opts.refactor_period) {
        refactor();
        pivots_since_refactor = 0;
      }
    }
    if (!out.converged) {
      compute_duals(duals);
      std::vector<double> positive(duals);
      for (double& y : positive) y = std::max(0.0, y);
      const auto priced = pricing.solve(positive);
      out.lower_bound = farley_bound(positive, std::max(1.0, priced.bound));
    }
    out.value = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < m_) continue;
      const double x = std::max(0.0, xb_[r]);
      out.value += x;
      if (x > kPivotTol) out.basic.emplace_back(columns_[basis_[r] - m_], x);
    }
    if (out.converged) out.lower_bound = std::min(out.lower_bound, out.value);
    out.columns = columns_;
    out.duals = duals;
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  static constexpr int kBlandAfter = 20;

  void add_dense(const Pattern& p) {
    dense_.push_back(to_dense(p));
    norms_.push_back(std::sqrt(1.0 + kernels::dot(dense_.back(), dense_.back())));
  }

  std::vector<double> to_dense(const Pattern& p) const {
    std::vector<double> col(m_);
    for (std::size_t i = 0; i < m_; ++i) col[i] = static_cast<double>(p.counts[i]);
    return col;
  }

  std::span<double> binv_row(std::size_t r) { return {binv_.data() + r * m_, m_}; }
  std::span<const double> binv_row(std::size_t r) const { return {binv_.data() + r * m_, m_}; }

  double farley_bound(const std::vector<double>& y, double max_pattern_value) const {
    double by = 0.0;
    for (std::size_t i = 0; i < m_; ++i) by += rhs_[i] * y[i];
    return by / max_pattern_value;
  }

  void compute_duals(std::vector<double>& y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] >= m_) kernels::add(y, binv_row(r));
  }

  // Most negative reduced cost, or the lowest id with negative reduced cost
  // under Bland's rule.
  std::size_t find_entering(const std::vector<double>& y, bool bland) const {
    std::vector<bool> in_basis(m_ + columns_.size(), false);
    for (std::size_t id : basis_) in_basis[id] = true;
    std::size_t best = kNone;
    double best_cost = -kReducedCostTol;
    auto consider = [&](std::size_t id, double cost) {
      if (cost < best_cost) {
        best = id;
        best_cost = cost;
      }
    };
    for (std::size_t i = 0; i < m_ && !(bland && best != kNone); ++i)
      if (!in_basis[i]) consider(i, y[i]);
    for (std::size_t j = 0; j < columns_.size() && !(bland && best != kNone); ++j)
      if (!in_basis[m_ + j]) consider(m_ + j, (1.0 - kernels::dot(y, dense_[j])) / norms_[j]);
    return best;
  }

  std::vector<double> direction(std::size_t var) const {
    std::vector<double> w(m_);
    if (var < m_) {
      for (std::size_t r = 0; r < m_; ++r) w[r] = -binv_[r * m_ + var];
    } else {
      const auto& col = dense_[var - m_];
      for (std::size_t r = 0; r < m_; ++r) w[r] = kernels::dot(binv_row(r), col);
    }
    return w;
  }

  // Returns the step length.
  double pivot(std::size_t entering) {
    const std::vector<double> w = direction(entering);
    std::size_t leave = kNone;
    double best_ratio = INFINITY;
    for (std::size_t r = 0; r < m_; ++r) {
      if (w[r] <= kPivotTol) continue;
      const double ratio = std::max(0.0, xb_[r]) / w[r];
      if (leave == kNone || ratio < best_ratio - 1e-12) {
        leave = r;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + 1e-12 && basis_[r] < basis_[leave]) {
        leave = r;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
    if (leave == kNone) throw Error("cutting-stock master is unbounded");
    const double theta = best_ratio;
    const double wp = w[leave];
    auto prow = binv_row(leave);
    for (double& v : prow) v /= wp;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == leave || w[r] == 0.0) continue;
      kernels::axpy(binv_row(r), -w[r], prow);
      xb_[r] -= w[r] * theta;
      if (xb_[r] < 0.0 && xb_[r] > -1e-9) xb_[r] = 0.0;
    }
    xb_[leave] = theta;
    basis_[leave] = entering;
    return theta;
  }

  // Rebuild the inverse from the basis columns (Gauss-Jordan, partial pivoting).
  void refactor() {
    std::vector<double> a(m_ * m_, 0.0);
    for (std::size_t c = 0; c < m_; ++c) {
      const std::size_t id = basis_[c];
      if (id < m_) {
        a[id * m_ + c] = -1.0;
      } else {
        const auto& col = dense_[id - m_];
        for (std::size_t r = 0; r < m_; ++r) a[r * m_ + c] = col[r];
      }
    }
    std::vector<double> inv(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) inv[i * m_ + i] = 1.0;
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < m_; ++r)
        if (std::abs(a[r * m_ + c]) > std::abs(a[piv * m_ + c])) piv = r;
      if (std::abs(a[piv * m_ + c]) < 1e-14) return;  // keep the product-form inverse
      if (piv != c) {
        for (std::size_t k = 0; k < m_; ++k) {
          std::swap(a[piv * m_ + k], a[c * m_ + k]);
          std::swap(inv[piv * m_ + k], inv[c * m_ + k]);
        }
      }
      const double d = a[c * m_ + c];
      for (std::size_t k = 0; k < m_; ++k) {
        a[c * m_ + k] /= d;
        inv[c * m_ + k] /= d;
      }
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = a[r * m_ + c];
        if (f == 0.0) continue;
        kernels::axpy({a.data() + r * m_, m_}, -f, {a.data() + c * m_, m_});
        kernels::axpy({inv.data() + r * m_, m_}, -f, {inv.data() + c * m_, m_});
      }
    }
    // Row c of inv corresponds to basis position c.
    binv_ = std::move(inv);
    for (std::size_t r = 0; r < m_; ++r) {
      xb_[r] = kernels::dot(binv_row(r), rhs_);
      if (xb_[r] < 0.0 && xb_[r] > -1e-9) xb_[r] = 0.0;
    }
  }

  const RoundedInstance& inst_;
  std::size_t m_;
  std::vector<double> rhs_;
  std::vector<std::int64_t> upper_;
  std::vector<Pattern> columns_;
  std::vector<std::vector<double>> dense_;
  // Euclidean norm of each column, to scale reduced costs when pricing.
  std::vector<double> norms_;
  std::vector<std::size_t> basis_;
  std::vector<double> binv_;
  std::vector<double> xb_;
};

// Remove `amount` items of class i from the listed bin groups, last group first.
void trim(std::vector<PatternUse>& groups, std::size_t i, std::int64_t amount) {
  for (std::size_t g = groups.size(); g-- > 0 && amount > 0;) {
    PatternUse& pu = groups[g];
    const std::int64_t c = pu.pattern.counts[i];
    if (c == 0 || pu.uses == 0) continue;
    if (amount >= c * pu.uses) {
      amount -= c * pu.uses;
      pu.pattern.counts[i] = 0;
      continue;
    }
    // Clear class i entirely from q bins, and partially from one more.
    const std::int64_t q = amount / c;
    const std::int64_t rem = amount % c;
    std::vector<PatternUse> extra;
    if (q > 0) {
      PatternUse cleared = pu;
      cleared.pattern.counts[i] = 0;
      cleared.uses = q;
      extra.push_back(std::move(cleared));
    }
    if (rem > 0) {
      PatternUse partial = pu;
      partial.pattern.counts[i] = c - rem;
      partial.uses = 1;
      extra.push_back(std::move(partial));
    }
    pu.uses -= q + (rem > 0 ? 1 : 0);
    groups.insert(groups.end(), extra.begin(), extra.end());
    amount = 0;
  }
}

}  // namespace

CuttingStockLp solve_cutting_stock_lp(const RoundedInstance& inst, const ColumnGenerationOptions& opts) {
  validate_instance(inst);
  if (inst.sigma() == 0) {
    CuttingStockLp empty;
    empty.converged = true;
    return empty;
  }
  RestrictedMaster master(inst);
  return master.run(opts);
}

double lp_lower_bound(const RoundedInstance& inst) {
  const CuttingStockLp lp = solve_cutting_stock_lp(inst);
  return lp.converged ? lp.value : lp.lower_bound;
}

PackingSolution solve_gilmore_gomory(const RoundedInstance& inst, const ColumnGenerationOptions& opts) {
  const CuttingStockLp lp = solve_cutting_stock_lp(inst, opts);
  const std::size_t sigma = inst.sigma();

  // Integral parts stay as they are; each fractional part becomes one more bin.
  std::vector<PatternUse> whole;
  std::vector<PatternUse> fractional;
  for (const auto& [pattern, x] : lp.basic) {
    const auto floor_x = static_cast<std::int64_t>(std::floor(x + 1e-9));
    if (floor_x > 0) whole.push_back({pattern, floor_x, 0.0});
    if (x - static_cast<double>(floor_x) > 1e-9) fractional.push_back({pattern, 1, 0.0});
  }

  std::vector<std::int64_t> covered(sigma, 0);
  for (const auto* part : {&whole, &fractional})
    for (const auto& pu : *part)
      for (std::size_t i = 0; i < sigma; ++i) covered[i] += pu.pattern.counts[i] * pu.uses;

  std::vector<std::int64_t> deficit(sigma, 0);
  for (std::size_t i = 0; i < sigma; ++i) {
    const std::int64_t need = inst.entries[i].count;
    if (covered[i] < need) {
      deficit[i] = need - covered[i];  // only from floating-point round-off
    } else if (covered[i] > need) {
      // Over-coverage: strip from the rounded-up bins first, then from the rest.
      std::int64_t surplus = covered[i] - need;
      std::int64_t in_frac = 0;
      for (const auto& pu : fractional) in_frac += pu.pattern.counts[i];
      const std::int64_t from_frac = std::min(surplus, in_frac);
      trim(fractional, i, from_frac);
      trim(whole, i, surplus - from_frac);
    }
  }

  // Repack whatever the rounded-up bins still hold; keep it only if it is no worse.
  std::vector<std::int64_t> residual(deficit);
  for (const auto& pu : fractional)
    for (std::size_t i = 0; i < sigma; ++i) residual[i] += pu.pattern.counts[i] * pu.uses;
  PackingSolution repacked = detail::ffd_counts(inst, residual);
  const PackingSolution kept = detail::canonicalize(inst, fractional);
  const bool need_deficit = std::any_of(deficit.begin(), deficit.end(), [](auto d) { return d > 0; });

  std::vector<PatternUse> all = whole;
  if (need_deficit || repacked.bins_used() <= kept.bins_used()) {
    all.insert(all.end(), repacked.patterns.begin(), repacked.patterns.end());
  } else {
    all.insert(all.end(), kept.patterns.begin(), kept.patterns.end());
  }
  PackingSolution sol = detail::canonicalize(inst, std::move(all));
  // The rounding bound is worst case; plain FFD is sometimes tighter.
  PackingSolution ffd = solve_ffd(inst);
  if (ffd.bins_used() < sol.bins_used()) sol = std::move(ffd);
  if (!lp.converged)
    throw SolverLimitError("column generation did not converge within the iteration cap", std::move(sol));
  return sol;
}

}  // namespace streampack
