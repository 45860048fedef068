#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "streampack/error.hpp"
#include "streampack/vsched.hpp"

using namespace streampack;

namespace {

std::vector<VectorItem> random_jobs(oracle::Rng& rng, std::size_t n, std::size_t d, double hi) {
  std::vector<VectorItem> out(n, VectorItem(d));
  for (auto& v : out)
    for (double& x : v) x = rng.uniform(0.0, hi);
  return out;
}

void check_state(const ContainerState& s) {
  const double thr = s.threshold();
  for (const auto& b : s.big_jobs()) EXPECT_GT(linf_norm(b), thr);
  for (const auto& c : s.closed_containers()) {
    EXPECT_GT(linf_norm(c), thr);
    EXPECT_LE(linf_norm(c), 2.0 * thr * (1.0 + 1e-12));
  }
  if (s.open_container()) {
    EXPECT_LE(linf_norm(*s.open_container()), thr);
  }
}

}  // namespace

TEST(Gamma, FormulaAndCap) {
  EXPECT_DOUBLE_EQ(gamma_of(1.0, 1), 0.25);
  EXPECT_NEAR(gamma_of(0.5, 4), 0.0060112293370373476, 1e-15);
  EXPECT_NEAR(gamma_of(0.5, 4), 0.25 / (12.0 * std::log(32.0)), 1e-15);
  EXPECT_NEAR(gamma_of(0.5, 2), 0.25 / (12.0 * std::log(8.0)), 1e-15);
  for (double eps : {0.1, 0.3, 0.5, 1.0})
    for (std::size_t d = 1; d < 20; ++d) {
      EXPECT_LE(gamma_of(eps, d + 1), gamma_of(eps, d));
      EXPECT_LE(gamma_of(eps, d), eps / 4.0);
    }
  EXPECT_THROW(gamma_of(0.0, 2), ConfigError);
  EXPECT_THROW(gamma_of(1.5, 2), ConfigError);
}

TEST(ContainerStateTest, FirstJobIsBig) {
  ContainerState s(2, 2, 1.0, 0.1);
  s.process_job(std::vector<double>{1.0, 0.2});
  EXPECT_DOUBLE_EQ(s.scale(), 0.5);
  EXPECT_EQ(s.big_jobs().size(), 1u);
  EXPECT_FALSE(s.open_container().has_value());
}

TEST(ContainerStateTest, SmallJobsShareTheOpenContainer) {
  ContainerState s(2, 2, 1.0, 0.1);
  s.process_job(std::vector<double>{1.0, 1.0});  // T = 0.5, threshold 0.05
  const double half = 0.05 / 2.0;
  s.process_job(std::vector<double>{half, 0.0});
  s.process_job(std::vector<double>{0.0, half});
  ASSERT_TRUE(s.open_container().has_value());
  EXPECT_DOUBLE_EQ((*s.open_container())[0], half);
  EXPECT_DOUBLE_EQ((*s.open_container())[1], half);
  EXPECT_TRUE(s.closed_containers().empty());
}

TEST(ContainerStateTest, RejectsWrongDimension) {
  ContainerState s(2, 3, 0.5);
  EXPECT_THROW(s.process_job(std::vector<double>{0.1, 0.2}), InputError);
  EXPECT_THROW(ContainerState(0, 3, 0.5), ConfigError);
  EXPECT_THROW(ContainerState(2, 3, 0.5, 0.0), ConfigError);
}

TEST(ContainerStateTest, InvariantsHoldAtEveryStep) {
  oracle::Rng rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t m = 2 + rng.index(3), d = 1 + rng.index(4);
    ContainerState s(m, d, 0.5, trial % 2 ? std::optional<double>(0.05) : std::nullopt);
    std::vector<double> sum(d, 0.0);
    const std::size_t n = 3000;
    for (std::size_t i = 0; i < n; ++i) {
      // Occasional large jobs grow T and force reopening and demotion.
      const double hi = rng.index(50) == 0 ? 1.0 : 0.02;
      VectorItem v(d);
      for (double& x : v) x = rng.uniform(0.0, hi);
      s.process_job(v);
      for (std::size_t k = 0; k < d; ++k) sum[k] += v[k];
      if (i % 37 == 0) check_state(s);
    }
    check_state(s);
    const auto summary = s.summarize();
    std::vector<double> total(d, 0.0);
    for (const auto& j : summary.jobs())
      for (std::size_t k = 0; k < d; ++k) total[k] += j[k];
    for (std::size_t k = 0; k < d; ++k) {
      EXPECT_NEAR(summary.loads[k], sum[k], 1e-9 * n);
      EXPECT_NEAR(total[k], sum[k], 1e-9 * n);
    }
    const double closed_or_big = static_cast<double>(s.big_jobs().size() + s.closed_containers().size());
    EXPECT_LE(closed_or_big, static_cast<double>(d * m) / s.gamma());
    const auto mem = s.memory();
    EXPECT_LE(mem.stored_entries, mem.peak_entries);
    EXPECT_LE(mem.peak_entries, mem.stream_length);
  }
}

TEST(ContainerStateTest, SummarySizeOnLongStream) {
  oracle::Rng rng(202);
  ContainerState s(3, 3, 0.5);
  for (int i = 0; i < 10000; ++i) {
    VectorItem v(3);
    for (double& x : v) x = rng.uniform(0.0, 1.0);
    s.process_job(v);
  }
  const auto summary = s.summarize();
  EXPECT_LE(static_cast<double>(summary.jobs().size()), 3.0 * 3.0 / summary.gamma + 1.0);
}

TEST(ContainerStateTest, SingleJobAndEmptyStream) {
  const std::vector<VectorItem> one{{0.3, 0.1}};
  const auto s = summarize_stream(one, 2, 0.5);
  EXPECT_EQ(s.jobs().size(), 1u);
  EXPECT_THROW(summarize_stream(std::vector<VectorItem>{}, 2, 0.5), EmptySummaryError);
  ContainerState empty(2, 2, 0.5);
  EXPECT_TRUE(empty.summarize().jobs().empty());
}

TEST(ContainerStateTest, AllSmallStreamConservesVolume) {
  ContainerState s(2, 2, 1.0, 0.25);
  s.process_job(std::vector<double>{1.0, 1.0});
  oracle::Rng rng(7);
  std::vector<double> small(2, 0.0);
  for (int i = 0; i < 400; ++i) {
    VectorItem v{rng.uniform(0.0, 0.01), rng.uniform(0.0, 0.01)};
    small[0] += v[0];
    small[1] += v[1];
    s.process_job(v);
  }
  const auto summary = s.summarize();
  EXPECT_NEAR(summary.container_loads[0] + (summary.big_jobs.empty() ? 0.0 : summary.big_jobs[0][0]),
              small[0] + 1.0, 1e-9);
}

TEST(TightExample, ShapeAndCount) {
  const auto jobs = tight_example(2, 0.25);
  ASSERT_EQ(jobs.size(), 10u);
  for (const auto& j : jobs) {
    ASSERT_EQ(j.size(), 3u);
    for (double x : j) {
      const bool near_grid = std::abs(x) < 1e-9 || std::abs(x - 0.25) < 1e-9 || std::abs(x - 1.0) < 1e-9;
      EXPECT_TRUE(near_grid) << x;
    }
  }
  EXPECT_EQ(tight_example(3, 0.2).size(), 3u + 10u * 3u);
  EXPECT_THROW(tight_example(2, 0.3), ConfigError);
  EXPECT_THROW(tight_example(1, 0.25), ConfigError);
}

TEST(TightExample, ReplayBuildsOneContainerPerGroup) {
  for (auto [m, gamma] : {std::pair<std::size_t, double>{2, 0.25}, {3, 0.2}}) {
    const auto summary = summarize_stream(tight_example(m, gamma), m, 1.0, gamma);
    const auto groups = static_cast<std::size_t>(std::round((static_cast<double>(m) - 1.0) / gamma));
    EXPECT_EQ(summary.big_jobs.size(), m);
    ASSERT_EQ(summary.containers.size(), groups);
    for (const auto& c : summary.containers) {
      for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(c[i], gamma, 1e-9);
      EXPECT_EQ(c[m], 0.0);
    }
  }
}

TEST(Greedy, Examples) {
  const std::vector<VectorItem> two{{1.0}, {1.0}};
  const auto a = greedy_min_makespan(two, 2);
  EXPECT_EQ(a.makespan, 1.0);
  EXPECT_NE(a.machine[0], a.machine[1]);
  const std::vector<VectorItem> three{{0.5}, {0.5}, {0.5}};
  EXPECT_EQ(greedy_min_makespan(three, 2).makespan, 1.0);
  EXPECT_THROW(greedy_min_makespan(two, 0), ConfigError);
}

TEST(Greedy, BetweenOptAndTwiceOpt) {
  oracle::Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const auto jobs = random_jobs(rng, 8, 2, 1.0);
    const double opt = oracle::makespan_opt(jobs, 2);
    const double g = greedy_min_makespan(jobs, 2).makespan;
    EXPECT_GE(g, opt - 1e-12);
    EXPECT_LE(g, 2.0 * opt + 1e-12);
  }
}

TEST(ExactVsOpt, MatchesBruteForce) {
  oracle::Rng rng(66);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 2 + rng.index(2), d = 1 + rng.index(3), n = 1 + rng.index(10);
    const auto jobs = random_jobs(rng, n, d, trial % 3 ? 1.0 : 0.3);
    EXPECT_NEAR(exact_vs_opt(jobs, m), oracle::makespan_opt(jobs, m), 1e-12) << "trial " << trial;
  }
  const std::vector<VectorItem> one{{0.3, 0.7}};
  EXPECT_EQ(exact_vs_opt(one, 3), 0.7);
  EXPECT_THROW(exact_vs_opt(std::vector<VectorItem>(15, VectorItem{0.1}), 2), OracleScaleError);
}

TEST(SummaryMakespan, SingleMachineIsTheLargestLoad) {
  oracle::Rng rng(3);
  const auto jobs = random_jobs(rng, 200, 3, 1.0);
  const auto s = summarize_stream(jobs, 1, 0.5);
  const auto ms = summary_makespan(s);
  EXPECT_TRUE(ms.exact);
  EXPECT_DOUBLE_EQ(ms.value, std::max({s.loads[0], s.loads[1], s.loads[2]}));
}

TEST(Sandwich, SmallRandomStreams) {
  oracle::Rng rng(88);
  const double eps = 0.5;
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t m = 2 + rng.index(2), d = 2 + rng.index(2);
    auto jobs = random_jobs(rng, 4 + rng.index(4), d, 1.0);
    for (int i = 0; i < 4; ++i) jobs.push_back(random_jobs(rng, 1, d, 0.002).front());
    const auto s = summarize_stream(jobs, m, eps);
    const double opt = oracle::makespan_opt(jobs, m);
    const double opt_r = exact_vs_opt(s.jobs(), m);
    EXPECT_GE(opt_r, opt - 1e-12);
    EXPECT_LE(opt_r, (2.0 - 1.0 / static_cast<double>(m) + 3.0 * eps) * opt + 1e-12);
  }
}

TEST(Placement, SingleContainer) {
  const std::vector<VectorItem> c{{0.1, 0.05}};
  const auto p = place_containers(c, 3, 0.5, 0.05, 1);
  EXPECT_LE(p.worst_excess, 1e-9);
  EXPECT_EQ(p.attempts, 1);
}

TEST(Placement, SymmetricInstance) {
  const std::vector<VectorItem> c(12, VectorItem{0.1, 0.1, 0.1});
  const auto p = place_containers(c, 3, 0.2, 0.05, 7);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_LE(p.assignment.loads[i][k], p.bound[k] + 1e-9);
}

TEST(Placement, TightExampleContainers) {
  for (auto [m, gamma] : {std::pair<std::size_t, double>{2, 0.25}, {3, 0.2}}) {
    const auto s = summarize_stream(tight_example(m, gamma), m, 1.0, gamma);
    const auto cont = s.normalized_containers();
    const auto p = place_containers(cont, m, 1.0, gamma, 11);
    std::vector<double> lc(m + 1, 0.0);
    for (const auto& c : cont)
      for (std::size_t k = 0; k <= m; ++k) lc[k] += c[k];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k <= m; ++k) {
        const double bound = std::max(0.5, lc[k] / static_cast<double>(m)) + 2.0 + 4.0 * gamma;
        EXPECT_LE(p.assignment.loads[i][k], bound + 1e-9);
      }
  }
}

TEST(Placement, ImpossibleBoundReportsBestAttempt) {
  const std::vector<VectorItem> c(3, VectorItem{1.0});
  try {
    place_containers(c, 2, 0.0, 0.0, 5, 8);
    FAIL() << "expected PlacementError";
  } catch (const PlacementError& e) {
    EXPECT_GE(e.best().attempts, 1);
    EXPECT_LE(e.best().attempts, 8);
    EXPECT_NEAR(e.best().worst_excess, 0.5, 1e-12);
  }
}

TEST(Placement, DeterministicForSeed) {
  oracle::Rng rng(9);
  const auto c = random_jobs(rng, 40, 3, 0.02);
  const auto a = place_containers(c, 3, 0.3, 0.01, 42);
  const auto b = place_containers(c, 3, 0.3, 0.01, 42);
  EXPECT_EQ(a.assignment.machine, b.assignment.machine);
  EXPECT_EQ(a.seed, b.seed);
}
