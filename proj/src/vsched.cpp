#include "streampack/vsched.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "streampack/kernels.hpp"

namespace streampack {

double gamma_of(double epsilon, std::size_t d) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
  if (d == 0) throw ConfigError("dimension must be at least 1");
  const double cap = epsilon / 4.0;
  const double dd = static_cast<double>(d);
  const double log_term = std::log(dd * dd / epsilon);
  if (!(log_term > 0.0)) return cap;
  return std::min(cap, epsilon * epsilon / (12.0 * log_term));
}

double VsSummary::scale() const {
  if (loads.empty() || m == 0) return 0.0;
  return std::max(0.0, kernels::max_elem(loads)) / static_cast<double>(m);
}

std::vector<VectorItem> VsSummary::jobs() const {
  std::vector<VectorItem> out(big_jobs);
  out.insert(out.end(), containers.begin(), containers.end());
  return out;
}

std::vector<VectorItem> VsSummary::normalized_containers() const {
  const double t = scale();
  std::vector<VectorItem> out(containers);
  if (t > 0.0)
    for (auto& c : out)
      for (double& x : c) x /= t;
  return out;
}

ContainerState::ContainerState(std::size_t m, std::size_t d, double epsilon, std::optional<double> gamma)
    : m_(m), d_(d), epsilon_(epsilon), loads_(d, 0.0) {
  if (m == 0) throw ConfigError("machine count must be at least 1");
  gamma_ = gamma_of(epsilon, d);
  if (gamma) {
    if (!(*gamma > 0.0 && *gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
    gamma_ = *gamma;
  }
}

std::int64_t ContainerState::stored() const noexcept {
  return static_cast<std::int64_t>(big_.size() + closed_.size() + (open_ ? 1 : 0));
}

void ContainerState::process_job(std::span<const double> v) {
  check_unit_vector(v, d_);
  ++jobs_;
  kernels::add(loads_, v);
  const double t = std::max(0.0, kernels::max_elem(loads_)) / static_cast<double>(m_);
  if (t > scale_) {
    scale_ = t;
    rescale();
  }
  const double norm = linf_norm(v);
  if (norm > threshold())
    big_.emplace(norm, VectorItem(v.begin(), v.end()));
  else
    absorb_small(VectorItem(v.begin(), v.end()));
  accountant_.observe(stored());
}

void ContainerState::rescale() {
  const double thr = threshold();
  std::multimap<double, VectorItem> pool;
  while (!closed_.empty() && closed_.begin()->first <= thr) {
    auto node = closed_.extract(closed_.begin());
    pool.insert(std::move(node));
  }
  if (pool.empty() && big_.empty()) return;
  if (open_) {
    const double n = linf_norm(*open_);
    pool.emplace(n, std::move(*open_));
    open_.reset();
  }
  // Pairwise merging, smallest first, until at most one container is open.
  while (pool.size() >= 2) {
    VectorItem a = std::move(pool.begin()->second);
    pool.erase(pool.begin());
    kernels::add(a, pool.begin()->second);
    pool.erase(pool.begin());
    const double n = linf_norm(a);
    if (n > thr)
      closed_.emplace(n, std::move(a));
    else
      pool.emplace(n, std::move(a));
  }
  if (!pool.empty()) open_ = std::move(pool.begin()->second);

  while (!big_.empty() && big_.begin()->first <= thr) {
    VectorItem v = std::move(big_.begin()->second);
    big_.erase(big_.begin());
    absorb_small(std::move(v));
  }
}

void ContainerState::absorb_small(VectorItem v) {
  if (!open_)
    open_ = std::move(v);
  else
    kernels::add(*open_, v);
  close_open_if_full();
}

void ContainerState::close_open_if_full() {
  const double n = linf_norm(*open_);
  if (n > threshold()) {
    closed_.emplace(n, std::move(*open_));
    open_.reset();
  }
}

std::vector<VectorItem> ContainerState::big_jobs() const {
  std::vector<VectorItem> out;
  for (const auto& [n, v] : big_) out.push_back(v);
  return out;
}

std::vector<VectorItem> ContainerState::closed_containers() const {
  std::vector<VectorItem> out;
  for (const auto& [n, v] : closed_) out.push_back(v);
  return out;
}

VsSummary ContainerState::summarize() const {
  VsSummary s;
  s.m = m_;
  s.d = d_;
  s.epsilon = epsilon_;
  s.gamma = gamma_;
  s.big_jobs = big_jobs();
  s.containers = closed_containers();
  if (open_) s.containers.push_back(*open_);
  s.loads = loads_;
  s.container_loads.assign(d_, 0.0);
  for (const auto& c : s.containers) kernels::add(s.container_loads, c);
  return s;
}

VsSummary summarize_stream(std::span<const VectorItem> stream, std::size_t m, double epsilon,
                           std::optional<double> gamma) {
  if (stream.empty()) throw EmptySummaryError("empty stream has no dimension");
  ContainerState state(m, stream.front().size(), epsilon, gamma);
  for (const auto& v : stream) state.process_job(v);
  return state.summarize();
}

VsMakespan summary_makespan(const VsSummary& summary, std::size_t exact_limit) {
  VsMakespan out;
  if (summary.loads.empty()) return out;
  if (summary.m == 1) {
    out.value = out.greedy = std::max(0.0, kernels::max_elem(summary.loads));
    out.exact = true;
    return out;
  }
  const auto jobs = summary.jobs();
  out.greedy = greedy_min_makespan(jobs, summary.m).makespan;
  out.exact = jobs.size() <= exact_limit;
  out.value = out.exact ? exact_vs_opt(jobs, summary.m, exact_limit) : out.greedy;
  return out;
}

Placement place_containers(std::span<const VectorItem> containers, std::size_t m, double epsilon, double gamma,
                           std::uint64_t seed, int max_attempts) {
  if (m == 0) throw ConfigError("machine count must be at least 1");
  if (max_attempts < 1) throw ConfigError("at least one placement attempt is required");
  const std::size_t d = containers.empty() ? 0 : containers.front().size();
  for (const auto& c : containers)
    if (c.size() != d) throw InputError("containers have mixed dimensions");

  std::vector<double> total(d, 0.0);
  for (const auto& c : containers) kernels::add(total, c);
  std::vector<double> first_cap(d), bound(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double lp = std::max(0.5, total[k] / static_cast<double>(m));
    first_cap[k] = lp + epsilon + 2.0 * gamma;
    bound[k] = lp + 2.0 * epsilon + 4.0 * gamma;
  }
  constexpr double kTol = 1e-9;

  std::optional<Placement> best;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    std::vector<std::vector<double>> first(m, std::vector<double>(d, 0.0));
    std::vector<std::vector<double>> second(m, std::vector<double>(d, 0.0));
    double second_makespan = 0.0;
    Placement p;
    p.seed = seed + static_cast<std::uint64_t>(attempt);
    p.attempts = attempt + 1;
    p.bound = bound;
    p.assignment.machine.reserve(containers.size());
    for (const auto& c : containers) {
      const std::size_t i = static_cast<std::size_t>(rng() % m);
      bool fits = true;
      for (std::size_t k = 0; k < d && fits; ++k) fits = first[i][k] + c[k] <= first_cap[k] + kTol;
      if (fits) {
        kernels::add(first[i], c);
        p.assignment.machine.push_back(i);
        continue;
      }
      ++p.overflowed;
      std::size_t pick = 0;
      double pick_global = std::numeric_limits<double>::infinity();
      double pick_local = pick_global;
      for (std::size_t j = 0; j < m; ++j) {
        const double local = kernels::max_sum(second[j], c);
        const double global = std::max(second_makespan, local);
        if (global < pick_global || (global == pick_global && local < pick_local)) {
          pick = j;
          pick_global = global;
          pick_local = local;
        }
      }
      kernels::add(second[pick], c);
      second_makespan = pick_global;
      p.assignment.machine.push_back(pick);
    }
    p.assignment.loads = first;
    for (std::size_t i = 0; i < m; ++i) kernels::add(p.assignment.loads[i], second[i]);
    p.assignment.makespan = makespan_of(p.assignment.loads);
    p.worst_excess = -std::numeric_limits<double>::infinity();
    for (const auto& l : p.assignment.loads)
      for (std::size_t k = 0; k < d; ++k) p.worst_excess = std::max(p.worst_excess, l[k] - bound[k]);
    if (d == 0) p.worst_excess = 0.0;
    if (p.worst_excess <= kTol) return p;
    if (!best || p.worst_excess < best->worst_excess) best = p;
  }
  throw PlacementError("no placement within the load bound after " + std::to_string(max_attempts) + " attempts",
                       *best);
}

std::vector<VectorItem> tight_example(std::size_t m, double gamma) {
  if (m < 2) throw ConfigError("tight example needs at least 2 machines");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
  const double inv = 1.0 / gamma;
  const double per_machine = std::round(inv);
  if (std::abs(inv - per_machine) > 1e-9 * inv) throw ConfigError("1/gamma must be an integer");
  const std::size_t d = m + 1;
  const auto groups = (m - 1) * static_cast<std::size_t>(per_machine);

  std::vector<VectorItem> out;
  out.reserve(m + groups * m);
  for (std::size_t i = 0; i < m; ++i) {
    VectorItem v(d, 0.0);
    v[i] = 1.0;
    v[m] = 1.0;
    out.push_back(std::move(v));
  }
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t i = 0; i < m; ++i) {
      VectorItem v(d, 0.0);
      v[i] = gamma;
      if (i + 1 == m) v[0] = kTightNudge;
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace streampack
