#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "streampack/error.hpp"
#include "streampack/hmbp.hpp"

using namespace streampack;

namespace {

RoundedInstance inst_of(std::vector<SizeClass> e) {
  RoundedInstance inst{std::move(e)};
  inst.normalize();
  return inst;
}

std::int64_t ceil_lp(double v) { return static_cast<std::int64_t>(std::ceil(v - 1e-6)); }

RoundedInstance random_instance(oracle::Rng& rng, std::size_t sigma, std::int64_t max_items, double lo) {
  RoundedInstance inst;
  std::int64_t left = max_items;
  for (std::size_t i = 0; i < sigma && left > 0; ++i) {
    const std::int64_t c = 1 + static_cast<std::int64_t>(rng.index(static_cast<std::size_t>(std::min<std::int64_t>(left, 5))));
    inst.entries.push_back({rng.uniform(lo, 1.0), c});
    left -= c;
  }
  inst.normalize();
  return inst;
}

std::int64_t oracle_opt(const RoundedInstance& inst) {
  std::vector<double> sizes;
  std::vector<std::int64_t> counts;
  for (const auto& e : inst.entries) {
    sizes.push_back(e.size);
    counts.push_back(e.count);
  }
  return oracle::bin_packing_opt(sizes, counts);
}

}  // namespace

TEST(Solvers, NamesRoundTrip) {
  for (auto s : {Solver::Ffd, Solver::GilmoreGomory, Solver::Exact}) EXPECT_EQ(parse_solver(solver_name(s)), s);
  EXPECT_EQ(parse_solver("gg"), Solver::GilmoreGomory);
  EXPECT_THROW(parse_solver("simplex"), ConfigError);
}

TEST(Ffd, Examples) {
  EXPECT_EQ(solve_ffd(inst_of({{0.6, 2}})).bins_used(), 2);
  EXPECT_EQ(solve_ffd(inst_of({{0.5, 4}})).bins_used(), 2);
  const auto inst = inst_of({{0.7, 3}, {0.3, 3}});
  const auto sol = solve_ffd(inst);
  EXPECT_EQ(sol.bins_used(), 3);
  EXPECT_EQ(oracle_opt(inst), 3);
  EXPECT_TRUE(is_valid_packing(inst, sol));
  EXPECT_THROW(solve_ffd(RoundedInstance{{{1.2, 1}}}), InputError);
}

TEST(Lp, Examples) {
  EXPECT_NEAR(lp_lower_bound(inst_of({{0.5, 4}})), 2.0, 1e-9);
  EXPECT_NEAR(lp_lower_bound(inst_of({{0.6, 2}})), 2.0, 1e-9);
  const auto inst = inst_of({{0.4, 3}, {0.3, 3}});
  const double lp = lp_lower_bound(inst);
  EXPECT_GE(lp, 2.1 - 1e-9);
  EXPECT_LE(lp, static_cast<double>(oracle_opt(inst)) + 1e-9);
  const auto full = solve_cutting_stock_lp(inst);
  EXPECT_TRUE(full.converged);
  EXPECT_NEAR(full.lower_bound, full.value, 1e-9);
}

TEST(GilmoreGomory, Examples) {
  EXPECT_EQ(solve_gilmore_gomory(inst_of({{0.5, 4}})).bins_used(), 2);
  EXPECT_EQ(solve_gilmore_gomory(inst_of({{1.0, 3}})).bins_used(), 3);
  EXPECT_EQ(solve_gilmore_gomory(RoundedInstance{}).bins_used(), 0);
}

TEST(Exact, Examples) {
  EXPECT_EQ(solve_exact(inst_of({{0.6, 2}})), 2);
  EXPECT_EQ(solve_exact(inst_of({{0.34, 3}})), 2);
  EXPECT_EQ(solve_exact(inst_of({{0.7, 3}, {0.3, 3}})), 3);
  EXPECT_THROW(solve_exact(inst_of({{0.1, 25}})), OracleScaleError);
  EXPECT_EQ(solve_exact(inst_of({{0.1, 25}}), 30), 3);
}

TEST(Solvers, SandwichAgainstDpOracle) {
  oracle::Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = random_instance(rng, 1 + rng.index(8), 24, trial % 2 ? 0.05 : 0.2);
    const auto opt = oracle_opt(inst);
    const auto exact = solve_exact_packing(inst);
    const auto gg = solve_gilmore_gomory(inst);
    const auto ffd = solve_ffd(inst);
    const double lp = lp_lower_bound(inst);
    const auto sigma = static_cast<std::int64_t>(inst.sigma());
    ASSERT_TRUE(is_valid_packing(inst, exact));
    ASSERT_TRUE(is_valid_packing(inst, gg));
    ASSERT_TRUE(is_valid_packing(inst, ffd));
    EXPECT_EQ(exact.bins_used(), opt) << "trial " << trial;
    EXPECT_LE(static_cast<std::int64_t>(std::ceil(inst.total_size() - 1e-9)), ceil_lp(lp));
    EXPECT_LE(ceil_lp(lp), opt);
    EXPECT_LE(opt, gg.bins_used());
    EXPECT_LE(gg.bins_used(), ceil_lp(lp) + sigma);
    EXPECT_LE(opt, ffd.bins_used());
  }
}

TEST(GilmoreGomory, LargeMultiplicitiesWithinSigma) {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    RoundedInstance inst;
    for (int i = 0; i < 6; ++i) inst.entries.push_back({rng.uniform(0.1, 0.9), 10});
    inst.normalize();
    const auto gg = solve_gilmore_gomory(inst);
    EXPECT_TRUE(is_valid_packing(inst, gg));
    EXPECT_GE(gg.bins_used(), static_cast<std::int64_t>(std::ceil(inst.total_size() - 1e-9)));
    EXPECT_LE(gg.bins_used(), ceil_lp(lp_lower_bound(inst)) + static_cast<std::int64_t>(inst.sigma()));
  }
}

TEST(Solvers, PatternsFitAndFillLevelsMatch) {
  oracle::Rng rng(9);
  const auto inst = random_instance(rng, 8, 40, 0.05);
  for (auto s : {Solver::Ffd, Solver::GilmoreGomory}) {
    const auto sol = solve(inst, s);
    const auto fills = sol.fill_levels();
    EXPECT_EQ(static_cast<std::int64_t>(fills.size()), sol.bins_used());
    for (double f : fills) EXPECT_LE(f, 1.0 + kCapacityTol);
    for (const auto& pu : sol.patterns) {
      EXPECT_FALSE(pu.pattern.empty());
      EXPECT_GT(pu.uses, 0);
      EXPECT_NEAR(pu.fill, pu.pattern.fill(inst), 1e-12);
    }
  }
}
