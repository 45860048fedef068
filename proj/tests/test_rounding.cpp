#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <functional>
#include <numeric>

#include "oracles.hpp"
#include "streampack/error.hpp"
#include "streampack/rounding.hpp"

using namespace streampack;

namespace streampack {
void PrintTo(RoundingMode m, std::ostream* os) { *os << (m == RoundingMode::Simple ? "simple" : "geometric"); }
}  // namespace streampack

namespace {

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::vector<double> big_stream(oracle::Rng& rng, std::size_t n, double eps) {
  std::vector<double> v(n);
  for (double& x : v) {
    // Mix of scales so that several geometric groups are populated.
    const double lo = rng.index(3) == 0 ? eps : 0.5;
    x = std::nextafter(lo, 1.0) + rng.uniform(0.0, 1.0 - lo - 1e-12);
    x = std::min(1.0, std::max(x, std::nextafter(eps, 1.0)));
  }
  return v;
}

void check_domination_and_volume(const RoundedInstance& inst, const std::vector<double>& stream, double eps) {
  EXPECT_EQ(inst.total_items(), static_cast<std::int64_t>(stream.size()));
  for (std::size_t i = 0; i < inst.entries.size(); ++i) {
    EXPECT_GT(inst.entries[i].size, eps);
    EXPECT_GT(inst.entries[i].count, 0);
    if (i > 0) {
      EXPECT_GT(inst.entries[i - 1].size, inst.entries[i].size);
    }
  }
  const auto rounded = inst.expand();
  const auto original = sorted_desc(stream);
  ASSERT_EQ(rounded.size(), original.size());
  for (std::size_t i = 0; i < rounded.size(); ++i) ASSERT_GE(rounded[i], original[i]) << "position " << i;
  const double size_b = std::accumulate(stream.begin(), stream.end(), 0.0);
  EXPECT_LE(inst.total_size(), (1.0 + eps) * size_b + 1e-9);
}

}  // namespace

TEST(Classify, BoundaryIsSmall) {
  EXPECT_EQ(classify_item(0.05, 0.1), ItemClass::Small);
  EXPECT_EQ(classify_item(0.1, 0.1), ItemClass::Small);
  EXPECT_EQ(classify_item(0.100001, 0.1), ItemClass::Big);
  EXPECT_EQ(classify_item(1.0, 0.1), ItemClass::Big);
  EXPECT_THROW(classify_item(0.0, 0.1), InputError);
  EXPECT_THROW(classify_item(1.5, 0.1), InputError);
}

TEST(Groups, CountAndMembership) {
  EXPECT_EQ(geometric_group_count(1.0 / 3.0), 2);
  EXPECT_EQ(geometric_group_count(0.25), 2);
  EXPECT_EQ(geometric_group_count(0.2), 3);
  EXPECT_EQ(geometric_group_count(0.1), 4);
  EXPECT_EQ(geometric_group_of(1.0, 4), 0);
  EXPECT_EQ(geometric_group_of(0.75, 4), 0);
  EXPECT_EQ(geometric_group_of(0.5, 4), 1);  // (1/4, 1/2]
  EXPECT_EQ(geometric_group_of(0.3, 4), 1);
  EXPECT_EQ(geometric_group_of(0.25, 4), 2);
  EXPECT_EQ(geometric_group_of(0.11, 4), 3);
  EXPECT_EQ(geometric_group_of(0.01, 4), 3);  // clamped
}

TEST(Groups, EveryItemLandsInItsInterval) {
  oracle::Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.uniform(0.0, 1.0) + 1e-15;
    const int j = geometric_group_of(x, 60);
    EXPECT_GT(x, std::ldexp(1.0, -j - 1));
    EXPECT_LE(x, std::ldexp(1.0, -j));
  }
}

TEST(RoundedInstanceTest, NormalizeMergesAndSorts) {
  RoundedInstance inst{{{0.3, 2}, {0.6, 1}, {0.3, 1}, {0.5, 0}}};
  inst.normalize();
  ASSERT_EQ(inst.sigma(), 2u);
  EXPECT_EQ(inst.entries[0].size, 0.6);
  EXPECT_EQ(inst.entries[1].count, 3);
  EXPECT_EQ(inst.total_items(), 4);
  EXPECT_NEAR(inst.total_size(), 1.5, 1e-12);
  EXPECT_EQ(inst.expand(), (std::vector<double>{0.6, 0.3, 0.3, 0.3}));
  const double items[] = {0.2, 0.7, 0.2};
  const auto from = RoundedInstance::from_items(items);
  ASSERT_EQ(from.sigma(), 2u);
  EXPECT_EQ(from.entries[1].count, 2);
}

TEST(Rounder, Preconditions) {
  EXPECT_THROW(BigItemRounder(0.4, RoundingMode::Simple), ConfigError);
  EXPECT_THROW(BigItemRounder(0.0, RoundingMode::Geometric), ConfigError);
  BigItemRounder r(0.2, RoundingMode::Geometric);
  EXPECT_THROW(r.insert(0.2), InputError);
  EXPECT_THROW(r.insert(1.2), InputError);
  EXPECT_EQ(r.build().sigma(), 0u);
}

TEST(Rounder, ConstantStreamCollapses) {
  const std::vector<double> s(100, 0.6);
  const auto inst = round_simple(s, 1.0 / 3.0);
  ASSERT_EQ(inst.sigma(), 1u);
  EXPECT_EQ(inst.entries[0].size, 0.6);
  EXPECT_EQ(inst.entries[0].count, 100);
}

TEST(Rounder, LosslessWhenEverythingIsStored) {
  const std::vector<double> s{0.9, 0.8, 0.7, 0.6};
  const auto inst = round_simple(s, 0.2);
  ASSERT_EQ(inst.sigma(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(inst.entries[i].size, s[i]);
    EXPECT_EQ(inst.entries[i].count, 1);
  }
  const auto geo = round_geometric(std::vector<double>{0.9, 0.3}, 0.2);
  ASSERT_EQ(geo.sigma(), 2u);
  EXPECT_EQ(geo.entries[0].size, 0.9);
  EXPECT_EQ(geo.entries[1].size, 0.3);
}

TEST(Rounder, SingleGroupMatchesOneSummaryAtGroupPrecision) {
  oracle::Rng rng(8);
  std::vector<double> s(3000);
  for (double& x : s) x = 0.5 + rng.uniform(1e-9, 0.5);
  BigItemRounder geo(0.2, RoundingMode::Geometric);
  GKSummary single(0.2 / 8.0);
  for (double x : s) {
    geo.insert(x);
    single.insert(x);
  }
  const auto ranked = single.extract();
  const auto expected = instance_from_ranked(ranked);
  const auto got = geo.build();
  ASSERT_EQ(got.sigma(), expected.sigma());
  for (std::size_t i = 0; i < got.sigma(); ++i) {
    EXPECT_EQ(got.entries[i].size, expected.entries[i].size);
    EXPECT_EQ(got.entries[i].count, expected.entries[i].count);
  }
  EXPECT_EQ(geo.group_counts()[0], 3000);
}

class RoundingProperty : public ::testing::TestWithParam<std::tuple<double, RoundingMode>> {};

TEST_P(RoundingProperty, DominationAndVolumeOnRandomStreams) {
  const auto [eps, mode] = GetParam();
  oracle::Rng rng(static_cast<std::uint64_t>(eps * 1000) + (mode == RoundingMode::Simple ? 1 : 2));
  for (int trial = 0; trial < 6; ++trial) {
    const auto stream = big_stream(rng, 50 + rng.index(5000), eps);
    BigItemRounder r(eps, mode);
    for (double x : stream) r.insert(x);
    const auto inst = r.build();
    check_domination_and_volume(inst, stream, eps);
    EXPECT_LE(inst.sigma(), r.stored_entries());
    const auto counts = r.group_counts();
    EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), std::int64_t{0}), r.items());
  }
}

TEST(GeometricRounding, PerGroupDomination) {
  for (double eps : {1.0 / 3.0, 0.2, 0.1}) {
    oracle::Rng rng(77);
    const auto stream = big_stream(rng, 4000, eps);
    BigItemRounder r(eps, RoundingMode::Geometric);
    for (double x : stream) r.insert(x);
    for (int j = 0; j < r.k(); ++j) {
      std::vector<double> members;
      for (double x : stream)
        if (geometric_group_of(x, r.k()) == j) members.push_back(x);
      const auto part = r.build_group(static_cast<std::size_t>(j));
      if (members.empty()) {
        EXPECT_EQ(part.sigma(), 0u);
        continue;
      }
      check_domination_and_volume(part, members, eps);
    }
  }
}

TEST_P(RoundingProperty, OptimumInflationOnSmallStreams) {
  const auto [eps, mode] = GetParam();
  oracle::Rng rng(500 + static_cast<std::uint64_t>(eps * 100));
  for (int trial = 0; trial < 8; ++trial) {
    const auto stream = big_stream(rng, 4 + rng.index(13), eps);
    BigItemRounder r(eps, mode);
    for (double x : stream) r.insert(x);
    const auto inst = r.build();
    std::vector<double> sizes;
    std::vector<std::int64_t> counts;
    for (const auto& e : inst.entries) {
      sizes.push_back(e.size);
      counts.push_back(e.count);
    }
    const auto opt_r = oracle::bin_packing_opt(sizes, counts);
    const auto opt_b = oracle::bin_packing_opt(stream);
    EXPECT_LE(static_cast<double>(opt_r), (1.0 + eps) * static_cast<double>(opt_b) + r.k());
  }
}

INSTANTIATE_TEST_SUITE_P(Modes, RoundingProperty,
                         ::testing::Combine(::testing::Values(1.0 / 3.0, 0.2, 0.1),
                                            ::testing::Values(RoundingMode::Simple, RoundingMode::Geometric)),
                         [](const auto& info) {
                           const double eps = std::get<0>(info.param);
                           const char* mode = std::get<1>(info.param) == RoundingMode::Simple ? "simple" : "geometric";
                           return "eps" + std::to_string(static_cast<int>(std::round(eps * 1000))) + "_" + mode;
                         });

TEST(Rounder, GeometricUsesFewerSizesOnMixture) {
  oracle::Rng rng(12);
  std::vector<double> s(100000);
  for (double& x : s) x = rng.index(2) ? 0.5 + rng.uniform(1e-9, 0.5) : 0.2 + rng.uniform(1e-9, 0.05);
  const auto simple = round_simple(s, 0.2);
  const auto geo = round_geometric(s, 0.2);
  EXPECT_LT(geo.sigma(), simple.sigma());
  check_domination_and_volume(geo, s, 0.2);
  check_domination_and_volume(simple, s, 0.2);
}
