#include <algorithm>
#include <cmath>
#include <map>

#include "hmbp_internal.hpp"
#include "streampack/hmbp.hpp"

namespace streampack {

double Pattern::fill(const RoundedInstance& inst) const {
  double f = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    f += static_cast<double>(counts[i]) * inst.entries[i].size;
  return f;
}

bool Pattern::empty() const noexcept {
  return std::all_of(counts.begin(), counts.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t PackingSolution::bins_used() const noexcept {
  std::int64_t n = 0;
  for (const auto& p : patterns) n += p.uses;
  return n;
}

std::vector<double> PackingSolution::fill_levels() const {
  std::vector<double> out;
  for (const auto& p : patterns) out.insert(out.end(), static_cast<std::size_t>(p.uses), p.fill);
  return out;
}

std::string_view solver_name(Solver s) noexcept {
  switch (s) {
    case Solver::Ffd: return "ffd";
    case Solver::GilmoreGomory: return "gg";
    case Solver::Exact: return "exact";
  }
  return "?";
}

Solver parse_solver(std::string_view name) {
  if (name == "ffd") return Solver::Ffd;
  if (name == "gg") return Solver::GilmoreGomory;
  if (name == "exact") return Solver::Exact;
  throw ConfigError("unknown solver '" + std::string(name) + "'");
}

void validate_instance(const RoundedInstance& inst) {
  for (const auto& e : inst.entries) {
    if (!(e.size > 0.0 && e.size <= 1.0)) throw InputError("item size must lie in (0, 1]");
    if (e.count < 0) throw InputError("negative multiplicity");
  }
}

bool is_valid_packing(const RoundedInstance& inst, const PackingSolution& sol) {
  std::vector<std::int64_t> covered(inst.sigma(), 0);
  for (const auto& p : sol.patterns) {
    if (p.uses <= 0 || p.pattern.counts.size() != inst.sigma()) return false;
    if (p.pattern.fill(inst) > 1.0 + kCapacityTol) return false;
    for (std::size_t i = 0; i < inst.sigma(); ++i) {
      if (p.pattern.counts[i] < 0) return false;
      covered[i] += p.pattern.counts[i] * p.uses;
    }
  }
  for (std::size_t i = 0; i < inst.sigma(); ++i)
    if (covered[i] < inst.entries[i].count) return false;
  return true;
}

namespace detail {

PackingSolution canonicalize(const RoundedInstance& inst, std::vector<PatternUse> uses) {
  std::map<std::vector<std::int64_t>, std::int64_t> merged;
  std::vector<std::vector<std::int64_t>> order;
  for (auto& u : uses) {
    if (u.uses <= 0 || u.pattern.empty()) continue;
    auto [it, fresh] = merged.try_emplace(u.pattern.counts, 0);
    if (fresh) order.push_back(u.pattern.counts);
    it->second += u.uses;
  }
  PackingSolution sol;
  sol.patterns.reserve(order.size());
  for (auto& counts : order) {
    Pattern p{counts};
    const double fill = p.fill(inst);
    sol.patterns.push_back({std::move(p), merged[counts], fill});
  }
  return sol;
}

namespace {

// A run of consecutive bins (in opening order) with identical contents.
struct BinRun {
  std::vector<std::int64_t> counts;
  double fill;
  std::int64_t bins;
};

}  // namespace

PackingSolution ffd_counts(const RoundedInstance& inst, const std::vector<std::int64_t>& counts) {
  const std::size_t sigma = inst.sigma();
  std::vector<BinRun> runs;
  for (std::size_t i = 0; i < sigma; ++i) {
    std::int64_t left = counts[i];
    if (left <= 0) continue;
    const double s = inst.entries[i].size;
    std::vector<BinRun> next;
    next.reserve(runs.size() + 3);
    for (auto& run : runs) {
      if (left == 0) {
        next.push_back(std::move(run));
        continue;
      }
      const auto per_bin = static_cast<std::int64_t>(std::floor((1.0 - run.fill + kCapacityTol) / s));
      if (per_bin <= 0) {
        next.push_back(std::move(run));
        continue;
      }
      const std::int64_t full = left / per_bin;
      if (full >= run.bins) {
        run.counts[i] += per_bin;
        run.fill += static_cast<double>(per_bin) * s;
        left -= per_bin * run.bins;
        next.push_back(std::move(run));
        continue;
      }
      // Split: `full` bins take per_bin items, one bin takes the rest.
      const std::int64_t rest = left - full * per_bin;
      if (full > 0) {
        BinRun a = run;
        a.counts[i] += per_bin;
        a.fill += static_cast<double>(per_bin) * s;
        a.bins = full;
        next.push_back(std::move(a));
      }
      std::int64_t untouched = run.bins - full;
      if (rest > 0) {
        BinRun b = run;
        b.counts[i] += rest;
        b.fill += static_cast<double>(rest) * s;
        b.bins = 1;
        next.push_back(std::move(b));
        --untouched;
      }
      if (untouched > 0) {
        run.bins = untouched;
        next.push_back(std::move(run));
      }
      left = 0;
    }
    if (left > 0) {
      const auto per_bin = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor((1.0 + kCapacityTol) / s)));
      const std::int64_t full = left / per_bin;
      const std::int64_t rest = left % per_bin;
      if (full > 0) {
        BinRun a{std::vector<std::int64_t>(sigma, 0), static_cast<double>(per_bin) * s, full};
        a.counts[i] = per_bin;
        next.push_back(std::move(a));
      }
      if (rest > 0) {
        BinRun b{std::vector<std::int64_t>(sigma, 0), static_cast<double>(rest) * s, 1};
        b.counts[i] = rest;
        next.push_back(std::move(b));
      }
    }
    runs = std::move(next);
  }
  std::vector<PatternUse> uses;
  uses.reserve(runs.size());
  for (auto& r : runs) uses.push_back({Pattern{std::move(r.counts)}, r.bins, r.fill});
  return canonicalize(inst, std::move(uses));
}

}  // namespace detail

PackingSolution solve_ffd(const RoundedInstance& inst) {
  validate_instance(inst);
  std::vector<std::int64_t> counts;
  counts.reserve(inst.sigma());
  for (const auto& e : inst.entries) counts.push_back(e.count);
  return detail::ffd_counts(inst, counts);
}

PackingSolution solve(const RoundedInstance& inst, Solver solver) {
  switch (solver) {
    case Solver::Ffd: return solve_ffd(inst);
    case Solver::GilmoreGomory: return solve_gilmore_gomory(inst);
    case Solver::Exact: return solve_exact_packing(inst);
  }
  throw ConfigError("unknown solver");
}

}  // namespace streampack
