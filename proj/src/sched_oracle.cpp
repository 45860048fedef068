#include "streampack/sched_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "streampack/error.hpp"
#include "streampack/kernels.hpp"

namespace streampack {

namespace {

constexpr double kRelTol = 1e-12;

std::size_t common_dimension(std::span<const VectorItem> jobs) {
  if (jobs.empty()) return 0;
  const std::size_t d = jobs.front().size();
  for (const auto& j : jobs)
    if (j.size() != d) throw InputError("jobs have mixed dimensions");
  return d;
}

void check_machines(std::size_t m) {
  if (m == 0) throw ConfigError("machine count must be at least 1");
}

class MakespanSearch {
 public:
  MakespanSearch(std::vector<VectorItem> jobs, std::size_t m, std::size_t d)
      : jobs_(std::move(jobs)), m_(m), d_(d), loads_(m, std::vector<double>(d, 0.0)) {
    remaining_.assign(d_, 0.0);
    for (const auto& j : jobs_) kernels::add(remaining_, j);
    lower_ = 0.0;
    for (double r : remaining_) lower_ = std::max(lower_, r / static_cast<double>(m_));
    for (const auto& j : jobs_) lower_ = std::max(lower_, linf_norm(j));
  }

  double solve(double incumbent) {
    best_ = incumbent;
    if (best_ > lower_ * (1.0 + kRelTol)) dfs(0, 0.0);
    return best_;
  }

 private:
  bool improves(double value) const { return value < best_ * (1.0 - kRelTol); }
  bool done() const { return best_ <= lower_ * (1.0 + kRelTol); }

  void dfs(std::size_t idx, double current) {
    if (idx == jobs_.size()) {
      if (improves(current)) best_ = current;
      return;
    }
    // Remaining volume per dimension must fit under the incumbent.
    const double cap = best_ * (1.0 - kRelTol);
    for (std::size_t k = 0; k < d_; ++k) {
      double room = 0.0;
      for (const auto& l : loads_) room += std::max(0.0, cap - l[k]);
      if (remaining_[k] > room) return;
    }
    const VectorItem& job = jobs_[idx];
    kernels::sub(remaining_, job);
    for (std::size_t i = 0; i < m_; ++i) {
      bool seen = false;
      for (std::size_t e = 0; e < i && !seen; ++e) seen = loads_[e] == loads_[i];
      if (seen) continue;
      const double peak = std::max(current, kernels::max_sum(loads_[i], job));
      if (!improves(peak)) continue;
      kernels::add(loads_[i], job);
      dfs(idx + 1, peak);
      kernels::sub(loads_[i], job);
      if (done()) break;
    }
    kernels::add(remaining_, job);
  }

  std::vector<VectorItem> jobs_;
  std::size_t m_;
  std::size_t d_;
  std::vector<std::vector<double>> loads_;
  std::vector<double> remaining_;
  double lower_ = 0.0;
  double best_ = 0.0;
};

}  // namespace

double makespan_of(const std::vector<std::vector<double>>& loads) {
  double out = 0.0;
  for (const auto& l : loads)
    if (!l.empty()) out = std::max(out, kernels::max_elem(l));
  return out;
}

Assignment evaluate_assignment(std::span<const VectorItem> jobs, std::span<const std::size_t> machine,
                               std::size_t m) {
  check_machines(m);
  const std::size_t d = common_dimension(jobs);
  if (machine.size() != jobs.size()) throw InputError("assignment length differs from job count");
  Assignment out;
  out.machine.assign(machine.begin(), machine.end());
  out.loads.assign(m, std::vector<double>(d, 0.0));
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (machine[j] >= m) throw InputError("assignment names a machine out of range");
    kernels::add(out.loads[machine[j]], jobs[j]);
  }
  out.makespan = makespan_of(out.loads);
  return out;
}

Assignment greedy_min_makespan(std::span<const VectorItem> jobs, std::size_t m) {
  check_machines(m);
  const std::size_t d = common_dimension(jobs);
  Assignment out;
  out.loads.assign(m, std::vector<double>(d, 0.0));
  out.machine.reserve(jobs.size());
  double makespan = 0.0;
  for (const auto& job : jobs) {
    std::size_t pick = 0;
    double pick_global = std::numeric_limits<double>::infinity();
    double pick_local = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double local = d == 0 ? 0.0 : kernels::max_sum(out.loads[i], job);
      const double global = std::max(makespan, local);
      if (global < pick_global || (global == pick_global && local < pick_local)) {
        pick = i;
        pick_global = global;
        pick_local = local;
      }
    }
    kernels::add(out.loads[pick], job);
    out.machine.push_back(pick);
    makespan = std::max(makespan, pick_global);
  }
  out.makespan = makespan;
  return out;
}

double exact_vs_opt(std::span<const VectorItem> jobs, std::size_t m, std::size_t job_limit) {
  check_machines(m);
  if (jobs.size() > job_limit)
    throw OracleScaleError("exact scheduling limited to " + std::to_string(job_limit) + " jobs");
  const std::size_t d = common_dimension(jobs);
  if (jobs.empty() || d == 0) return 0.0;
  std::vector<VectorItem> order(jobs.begin(), jobs.end());
  std::stable_sort(order.begin(), order.end(), [](const VectorItem& a, const VectorItem& b) {
    const double na = linf_norm(a), nb = linf_norm(b);
    if (na != nb) return na > nb;
    return kernels::sum(a) > kernels::sum(b);
  });
  const double incumbent = greedy_min_makespan(order, m).makespan;
  MakespanSearch search(std::move(order), m, d);
  return search.solve(incumbent);
}

double lpt_makespan(std::span<const double> jobs, std::size_t m) {
  check_machines(m);
  std::vector<double> sorted(jobs.begin(), jobs.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::priority_queue<double, std::vector<double>, std::greater<>> machines;
  for (std::size_t i = 0; i < m; ++i) machines.push(0.0);
  double makespan = 0.0;
  for (double p : sorted) {
    const double load = machines.top() + p;
    machines.pop();
    machines.push(load);
    makespan = std::max(makespan, load);
  }
  return makespan;
}

double exact_scalar_makespan(std::span<const double> jobs, std::size_t m, std::size_t job_limit) {
  std::vector<VectorItem> vectors;
  vectors.reserve(jobs.size());
  for (double p : jobs) vectors.push_back({p});
  return exact_vs_opt(vectors, m, job_limit);
}

}  // namespace streampack
