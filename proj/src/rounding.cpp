#include "streampack/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "streampack/error.hpp"

namespace streampack {

std::int64_t RoundedInstance::total_items() const noexcept {
  std::int64_t n = 0;
  for (const auto& e : entries) n += e.count;
  return n;
}

double RoundedInstance::total_size() const noexcept {
  double s = 0.0;
  for (const auto& e : entries) s += e.size * static_cast<double>(e.count);
  return s;
}

std::vector<double> RoundedInstance::expand() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(total_items()));
  for (const auto& e : entries) out.insert(out.end(), static_cast<std::size_t>(e.count), e.size);
  return out;
}

RoundedInstance RoundedInstance::from_items(std::span<const double> items) {
  RoundedInstance inst;
  inst.entries.reserve(items.size());
  for (double s : items) inst.entries.push_back({s, 1});
  inst.normalize();
  return inst;
}

void RoundedInstance::normalize() {
  std::sort(entries.begin(), entries.end(),
            [](const SizeClass& a, const SizeClass& b) { return a.size > b.size; });
  std::vector<SizeClass> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.count <= 0) continue;
    if (!merged.empty() && merged.back().size == e.size)
      merged.back().count += e.count;
    else
      merged.push_back(e);
  }
  entries = std::move(merged);
}

ItemClass classify_item(double size, double epsilon) {
  if (!(size > 0.0 && size <= 1.0)) throw InputError("item size must lie in (0, 1]");
  return size > epsilon ? ItemClass::Big : ItemClass::Small;
}

int geometric_group_count(double epsilon) {
  return std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / epsilon) - 1e-12)));
}

int geometric_group_of(double size, int groups) {
  int exp = 0;
  const double mant = std::frexp(size, &exp);  // size = mant * 2^exp, mant in [0.5, 1)
  // Exact powers of two sit on the closed upper end of their interval.
  const int j = (mant == 0.5) ? 1 - exp : -exp;
  return std::clamp(j, 0, groups - 1);
}

BigItemRounder::BigItemRounder(double epsilon, RoundingMode mode)
    : epsilon_(epsilon), mode_(mode) {
  if (!(epsilon > 0.0 && epsilon <= 1.0 / 3.0)) throw ConfigError("epsilon must lie in (0, 1/3]");
  k_ = geometric_group_count(epsilon);
  if (mode == RoundingMode::Simple) {
    groups_.emplace_back(epsilon * epsilon / 4.0);
  } else {
    for (int j = 0; j < k_; ++j) groups_.emplace_back(epsilon / 8.0);
  }
}

double BigItemRounder::precision() const noexcept {
  return mode_ == RoundingMode::Simple ? epsilon_ * epsilon_ / 4.0 : epsilon_ / 8.0;
}

void BigItemRounder::insert(double size) {
  if (classify_item(size, epsilon_) != ItemClass::Big)
    throw InputError("rounder accepts big items (size > epsilon) only");
  const std::size_t g =
      mode_ == RoundingMode::Simple ? 0 : static_cast<std::size_t>(geometric_group_of(size, k_));
  groups_[g].insert(size);
  ++items_;
}

std::vector<std::int64_t> BigItemRounder::group_counts() const {
  std::vector<std::int64_t> out;
  out.reserve(groups_.size());
  for (const auto& g : groups_) out.push_back(g.count());
  return out;
}

std::size_t BigItemRounder::stored_entries() const noexcept {
  std::size_t n = 0;
  for (const auto& g : groups_) n += g.size();
  return n;
}

RoundedInstance instance_from_ranked(std::span<const RankedValue> ranked) {
  RoundedInstance inst;
  if (ranked.empty()) return inst;
  inst.entries.reserve(ranked.size());
  for (std::size_t j = 0; j + 1 < ranked.size(); ++j)
    inst.entries.push_back({ranked[j].value, ranked[j + 1].rank_upper - ranked[j].rank_upper});
  inst.entries.push_back({ranked.back().value, 1});
  inst.normalize();
  return inst;
}

RoundedInstance BigItemRounder::build_group(std::size_t group) const {
  const GKSummary& g = groups_.at(group);
  if (g.empty()) return {};
  const auto ranked = g.extract();
  return instance_from_ranked(ranked);
}

RoundedInstance BigItemRounder::build() const {
  RoundedInstance out;
  for (std::size_t j = 0; j < groups_.size(); ++j) {
    const RoundedInstance part = build_group(j);
    out.entries.insert(out.entries.end(), part.entries.begin(), part.entries.end());
  }
  out.normalize();
  return out;
}

RoundedInstance round_simple(std::span<const double> big_stream, double epsilon) {
  BigItemRounder r(epsilon, RoundingMode::Simple);
  for (double s : big_stream) r.insert(s);
  return r.build();
}

RoundedInstance round_geometric(std::span<const double> big_stream, double epsilon) {
  BigItemRounder r(epsilon, RoundingMode::Geometric);
  for (double s : big_stream) r.insert(s);
  return r.build();
}

}  // namespace streampack
