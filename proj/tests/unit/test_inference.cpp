#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rmtl/inference.hpp"
#include "rmtl/normal.hpp"

using namespace rmtl;

namespace {

const char* kIdentical =
    "time,status,group\n"
    "1,1,A\n2,2,A\n3,1,A\n4,0,A\n"
    "1,1,B\n2,2,B\n3,1,B\n4,0,B\n";

TwoGroupSample random_sample(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  return TwoGroupSample(oracle::random_records(rng, n));
}

}  // namespace

TEST(Method, ParseAndPrint) {
  EXPECT_EQ(parse_method("Diff"), Method::Diff);
  EXPECT_EQ(parse_method("sDiff"), Method::SDiff);
  EXPECT_EQ(to_string(Method::SDiff), "sDiff");
  EXPECT_THROW(parse_method("gray"), UsageError);
}

TEST(DiffTest, IdenticalGroups) {
  const auto r = diff_test(parse_dataset(kIdentical), 3.5, 0.05);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_FALSE(r.reject);
}

TEST(DiffTest, PValueFromStatistic) {
  // delta = -1/3, se = sqrt(16/900) gives Z = -2.5.
  const double z = (-1.0 / 3.0) / std::sqrt(16.0 / 900.0);
  EXPECT_NEAR(z, -2.5, 1e-12);
  EXPECT_NEAR(2.0 * normal_sf(std::abs(z)), 0.012419330651552, 1e-12);
}

TEST(DiffTest, AgreesWithDifference) {
  const auto s = random_sample(7, 60);
  const auto r = diff_test(s, 1.5, 0.05);
  EXPECT_DOUBLE_EQ(r.statistic, r.delta.delta / r.delta.se);
  EXPECT_NEAR(r.p_value, 2.0 * normal_sf(std::abs(r.statistic)), 1e-15);
  EXPECT_EQ(r.reject, r.p_value < 0.05);
  EXPECT_EQ(r.normalizer, r.delta.se);
}

TEST(DiffTest, SwapNegatesStatistic) {
  const auto s = random_sample(8, 60);
  const auto a = diff_test(s, 1.5, 0.05);
  const auto b = diff_test(s.swapped(), 1.5, 0.05);
  EXPECT_EQ(a.statistic, -b.statistic);
  EXPECT_EQ(a.p_value, b.p_value);
}

TEST(DiffTest, ZeroStandardErrorIsDataError) {
  const auto s = parse_dataset("time,status,group\n1,2,A\n2,0,A\n1,2,B\n2,0,B\n");
  EXPECT_THROW(diff_test(s, 1.5, 0.05), DataError);
}

TEST(PartialProcess, IdenticalGroupsAreZero) {
  const auto p = partial_process(fit_groups(parse_dataset(kIdentical)), 3.5);
  for (double v : p.partial) EXPECT_EQ(v, 0.0);
}

TEST(PartialProcess, TwoStepHandExample) {
  // Group 2 CIF jumps to 1/2 at t = 1; group 1 has no events of interest.
  const auto s = parse_dataset("time,status,group\n5,0,A\n5,0,A\n1,1,B\n3,0,B\n");
  const auto p = partial_process(fit_groups(s), 2.0);
  ASSERT_EQ(p.grid.size(), 1u);
  EXPECT_EQ(p.grid[0], 1.0);
  EXPECT_EQ(p.widths[0], 1.0);
  EXPECT_DOUBLE_EQ(p.partial[0], 0.5);
}

TEST(PartialProcess, TelescopesToDirectDifference) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = random_sample(seed, 50);
    const auto fit = fit_groups(s);
    for (double tau : {0.5, 1.0, default_tau(fit)}) {
      const auto p = partial_process(fit, tau);
      const auto d = rmtl_difference(fit, tau);
      EXPECT_NEAR(p.partial.back(), d.delta, 1e-12);
      for (double t : p.grid) EXPECT_LE(t, tau);
      for (std::size_t i = 1; i < p.grid.size(); ++i) EXPECT_LT(p.grid[i - 1], p.grid[i]);
    }
  }
}

TEST(PartialProcess, NoEventsBeforeTau) {
  const auto s = parse_dataset("time,status,group\n5,1,A\n6,0,A\n5,1,B\n");
  EXPECT_THROW(partial_process(fit_groups(s), 1.0), DataError);
}

TEST(SdiffSigma, SinglePointNoCrossTerms) {
  const std::vector<double> w{0.7}, v{0.3};
  EXPECT_NEAR(sdiff_sigma(w, v, 0.0), std::sqrt(0.49 * 0.3), 1e-15);
}

TEST(SdiffSigma, TwoPointHandExample) {
  const std::vector<double> w{1.0, 1.0}, v{1.0, 1.0};
  EXPECT_NEAR(sdiff_sigma(w, v, 0.5), std::sqrt(3.0), 1e-15);
}

TEST(SdiffSigma, MatchesDoubleSum) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double rho : {0.0, 0.25, 0.5, 1.0}) {
    std::vector<double> w(25), v(25);
    for (auto& x : w) x = u(rng);
    for (auto& x : v) x = u(rng) * 0.01;
    double s2 = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      s2 += w[i] * w[i] * v[i];
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        s2 += 2 * rho * w[i] * w[j] * std::sqrt(v[i]) * std::sqrt(v[j]);
      }
    }
    EXPECT_NEAR(sdiff_sigma(w, v, rho), std::sqrt(s2), 1e-12);
  }
}

TEST(SdiffSigma, Errors) {
  const std::vector<double> w{1.0, 1.0}, zero{0.0, 0.0};
  EXPECT_THROW(sdiff_sigma(w, zero, 0.5), DataError);
  EXPECT_THROW(sdiff_sigma(w, std::vector<double>{1.0}, 0.5), UsageError);
  EXPECT_THROW(sdiff_sigma(w, w, 1.5), UsageError);
}

TEST(SdiffTest, IdenticalGroups) {
  const auto r = sdiff_test(parse_dataset(kIdentical), 3.5, 0.05);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(SdiffTest, StatisticDefinition) {
  const auto s = random_sample(12, 60);
  const auto fit = fit_groups(s);
  const double tau = default_tau(fit);
  const auto p = partial_process(fit, tau);
  double sup = 0.0;
  for (double v : p.partial) sup = std::max(sup, std::abs(v));
  const auto r = sdiff_test(fit, tau, 0.05);
  EXPECT_DOUBLE_EQ(r.normalizer, sdiff_sigma(p, 0.5));
  EXPECT_DOUBLE_EQ(r.statistic, sup / r.normalizer);
  EXPECT_DOUBLE_EQ(r.p_value, sdiff_p_value(r.statistic));
  EXPECT_EQ(r.reject, r.p_value < 0.05);
}

TEST(SdiffTest, PartialValuesExample) {
  // Partial values {0.2, 0.5, 0.3} with sigma 0.25 give Q_S = 2.
  const std::vector<double> partial{0.2, 0.5, 0.3};
  double sup = 0.0;
  for (double v : partial) sup = std::max(sup, std::abs(v));
  const double q = sup / 0.25;
  EXPECT_DOUBLE_EQ(q, 2.0);
  const auto paths = oracle::simulate_paths(20000, 2048, 0.0, 77);
  EXPECT_NEAR(sdiff_p_value(q), oracle::exceed_fraction(paths.sup_abs, q), 0.015);
}

TEST(SdiffTest, HugeStatisticClampsToZero) {
  EXPECT_EQ(sdiff_p_value(1e-3), 1.0);
  EXPECT_EQ(sdiff_p_value(0.0), 1.0);
  EXPECT_GE(sdiff_p_value(50.0), 0.0);
  EXPECT_LT(sdiff_p_value(50.0), 1e-10);
}

TEST(Tests, LabelInvariance) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto s = random_sample(seed, 40);
    const double tau = default_tau(fit_groups(s));
    EXPECT_DOUBLE_EQ(diff_test(s, tau, 0.05).p_value, diff_test(s.swapped(), tau, 0.05).p_value);
    EXPECT_DOUBLE_EQ(sdiff_test(s, tau, 0.05).p_value, sdiff_test(s.swapped(), tau, 0.05).p_value);
  }
}

TEST(Tests, ScaleEquivariance) {
  for (std::uint64_t seed = 200; seed < 210; ++seed) {
    const auto s = random_sample(seed, 40);
    const double tau = default_tau(fit_groups(s));
    for (double c : {0.01, 3.0, 250.0}) {
      auto records = s.records();
      for (auto& r : records) r.time *= c;
      const TwoGroupSample scaled(records);
      const auto a = diff_test(s, tau, 0.05), b = diff_test(scaled, tau * c, 0.05);
      EXPECT_NEAR(a.statistic, b.statistic, 1e-9);
      EXPECT_NEAR(a.p_value, b.p_value, 1e-9);
      const auto x = sdiff_test(s, tau, 0.05), y = sdiff_test(scaled, tau * c, 0.05);
      EXPECT_NEAR(x.statistic, y.statistic, 1e-9);
      EXPECT_NEAR(x.p_value, y.p_value, 1e-9);
    }
  }
}

TEST(Tests, PValuesInUnitInterval) {
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    const auto s = random_sample(seed, 25);
    const double tau = default_tau(fit_groups(s));
    for (const auto& r : {diff_test(s, tau, 0.05), sdiff_test(s, tau, 0.05)}) {
      EXPECT_GE(r.p_value, 0.0);
      EXPECT_LE(r.p_value, 1.0);
      EXPECT_EQ(r.reject, r.p_value < r.alpha);
    }
  }
}
