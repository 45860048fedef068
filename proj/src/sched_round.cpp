#include "streampack/sched_round.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "streampack/error.hpp"
#include "streampack/sched_oracle.hpp"

namespace streampack {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
}

double power(double epsilon, int e) { return std::pow(1.0 + epsilon, e); }

}  // namespace

int power_bucket(double x, double epsilon) {
  int i = static_cast<int>(std::ceil(std::log(x) / std::log1p(epsilon))) - 1;
  // Settle the boundary against the same pow() used everywhere else.
  while (power(epsilon, i + 1) < x) ++i;
  while (power(epsilon, i) >= x) --i;
  return i;
}

int makespan_bucket_span(double epsilon) {
  check_epsilon(epsilon);
  int k = static_cast<int>(std::ceil(std::log(1.0 / epsilon) / std::log1p(epsilon) - 1e-12));
  return std::max(k, 0);
}

ScalarSchedSummary::ScalarSchedSummary(double epsilon) : epsilon_(epsilon), k_(makespan_bucket_span(epsilon)) {
  counters_.assign(static_cast<std::size_t>(k_) + 1, 0);
}

std::int64_t ScalarSchedSummary::counter(int bucket) const {
  const int j = bucket - (q_ - k_);
  if (jobs_ == 0 || j < 0 || j > k_) return 0;
  return counters_[static_cast<std::size_t>(j)];
}

void ScalarSchedSummary::process(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("job sizes must be positive and finite");
  if (jobs_ == 0) {
    p_max_ = p;
    q_ = power_bucket(p, epsilon_);
  } else if (p > p_max_) {
    p_max_ = p;
    const int q_new = power_bucket(p, epsilon_);
    if (q_new > q_) {
      const int shift = q_new - q_;
      // Expired buckets q-k .. q_new-k-1 fold into s at their upper end.
      for (int j = 0; j < std::min(shift, k_ + 1); ++j) {
        const std::int64_t c = counters_[static_cast<std::size_t>(j)];
        if (c > 0) {
          s_ += static_cast<double>(c) * power(epsilon_, q_ - k_ + j + 1);
          folded_ += c;
        }
      }
      std::vector<std::int64_t> next(counters_.size(), 0);
      for (int j = shift; j <= k_; ++j) next[static_cast<std::size_t>(j - shift)] = counters_[static_cast<std::size_t>(j)];
      counters_ = std::move(next);
      q_ = q_new;
    }
  }
  ++jobs_;
  if (p > power(epsilon_, q_ - k_)) {
    const int i = power_bucket(p, epsilon_);
    ++counters_[static_cast<std::size_t>(i - (q_ - k_))];
  } else {
    s_ += p;
    ++small_arrivals_;
  }
  accountant_.observe(static_cast<std::int64_t>(counters_.size()) + 1);
}

std::vector<double> ScalarSchedSummary::rounded_big_jobs() const {
  std::vector<double> out;
  if (jobs_ == 0) return out;
  for (int j = k_; j >= 0; --j) {
    const double size = power(epsilon_, q_ - k_ + j + 1);
    out.insert(out.end(), static_cast<std::size_t>(counters_[static_cast<std::size_t>(j)]), size);
  }
  return out;
}

double ScalarSchedSummary::estimate(std::size_t m, std::size_t exact_limit) const {
  if (m == 0) throw ConfigError("machine count must be at least 1");
  if (jobs_ == 0) throw EmptySummaryError("no jobs processed");
  const std::vector<double> big = rounded_big_jobs();
  const double mb = big.size() <= exact_limit ? exact_scalar_makespan(big, m, exact_limit) : lpt_makespan(big, m);
  double volume = s_;
  for (double b : big) volume += b;
  return std::max(mb, volume / static_cast<double>(m) + epsilon_ * p_max_);
}

VectorItem zero_small_coords(std::span<const double> v, double delta) {
  const double cut = delta * linf_norm(v);
  VectorItem out(v.begin(), v.end());
  for (double& x : out)
    if (x <= cut) x = 0.0;
  return out;
}

VectorTypeSummary::VectorTypeSummary(std::size_t d, double epsilon)
    : d_(d), epsilon_(epsilon), delta_(epsilon / static_cast<double>(d == 0 ? 1 : d)) {
  if (d == 0) throw ConfigError("dimension must be at least 1");
  check_epsilon(epsilon);
}

double VectorTypeSummary::big_type_bound() const {
  const double per_coord = std::ceil(std::log(1.0 / (delta_ * delta_)) / std::log1p(epsilon_) - 1e-12);
  return std::pow(per_coord, static_cast<double>(d_));
}

void VectorTypeSummary::demote_expired() {
  const double cut = delta_ * p_max_;
  for (auto it = big_.begin(); it != big_.end();) {
    const TypeKey& t = it->first;
    int e_max = kZeroBig;
    for (int e : t) e_max = std::max(e_max, e);
    if (power(epsilon_, e_max + 1) > cut) {
      ++it;
      continue;
    }
    TypeKey small(d_);
    for (std::size_t i = 0; i < d_; ++i) small[i] = t[i] == kZeroBig ? kZeroSmall : e_max - t[i];
    small_[small] += static_cast<double>(it->second) * power(epsilon_, e_max + 1);
    it = big_.erase(it);
  }
}

void VectorTypeSummary::process(std::span<const double> raw) {
  check_unit_vector(raw, d_);
  ++jobs_;
  const VectorItem v = zero_small_coords(raw, delta_);
  const double norm = linf_norm(v);
  if (norm == 0.0) {
    ++zeros_;
  } else {
    if (norm > p_max_) {
      p_max_ = norm;
      demote_expired();
    }
    TypeKey t(d_);
    if (norm > delta_ * p_max_) {
      for (std::size_t i = 0; i < d_; ++i) t[i] = v[i] == 0.0 ? kZeroBig : power_bucket(v[i], epsilon_);
      ++big_[t];
    } else {
      for (std::size_t i = 0; i < d_; ++i) {
        if (v[i] == 0.0) {
          t[i] = kZeroSmall;
          continue;
        }
        // Largest t >= 0 with v_i <= norm * (1+eps)^-t.
        int e = static_cast<int>(std::floor(std::log(norm / v[i]) / std::log1p(epsilon_)));
        e = std::max(e, 0);
        while (e > 0 && v[i] > norm * power(epsilon_, -e)) --e;
        while (v[i] <= norm * power(epsilon_, -(e + 1))) ++e;
        t[i] = e;
      }
      small_[t] += norm;
    }
  }
  accountant_.observe(static_cast<std::int64_t>(big_.size() + small_.size()) + 1);
}

std::vector<VectorItem> VectorTypeSummary::reconstruct() const {
  std::vector<VectorItem> out;
  for (const auto& [t, count] : big_) {
    VectorItem v(d_);
    for (std::size_t i = 0; i < d_; ++i) v[i] = t[i] == kZeroBig ? 0.0 : power(epsilon_, t[i] + 1);
    out.insert(out.end(), static_cast<std::size_t>(count), v);
  }
  const double h = delta_ * p_max_;
  for (const auto& [t, mass] : small_) {
    if (!(mass > 0.0) || !(h > 0.0)) continue;
    VectorItem unit(d_);
    for (std::size_t i = 0; i < d_; ++i) unit[i] = t[i] == kZeroSmall ? 0.0 : power(epsilon_, -t[i]);
    const auto full = static_cast<std::size_t>(std::floor(mass / h + 1e-12));
    VectorItem chunk(d_);
    for (std::size_t i = 0; i < d_; ++i) chunk[i] = h * unit[i];
    out.insert(out.end(), full, chunk);
    const double rest = mass - static_cast<double>(full) * h;
    if (rest > 1e-12 * h) {
      for (std::size_t i = 0; i < d_; ++i) chunk[i] = rest * unit[i];
      out.push_back(chunk);
    }
  }
  return out;
}

double VectorTypeSummary::estimate(std::size_t m, std::size_t job_limit) const {
  if (jobs_ == 0) throw EmptySummaryError("no jobs processed");
  const std::vector<VectorItem> jobs = reconstruct();
  if (jobs.size() > job_limit)
    throw OracleScaleError("reconstruction has " + std::to_string(jobs.size()) + " jobs, limit " +
                           std::to_string(job_limit));
  return exact_vs_opt(jobs, m, job_limit);
}

}  // namespace streampack
