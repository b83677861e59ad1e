#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "rmtl/simulate.hpp"

using namespace rmtl;

namespace {

GroupScenario group(double p1 = 0.7) {
  return {"g", PiecewiseWeibullCif(p1, {{0.0, 3.0, 2.0}}),
          PiecewiseWeibullCif(1.0 - p1, {{0.0, 2.0, 3.0}}), 50};
}

ScenarioSpec null_spec() { return load_scenario(oracle::scenario_path("A_null.json")); }

}  // namespace

TEST(RandomStream, Deterministic) {
  RandomStream a(1, 2), b(1, 2), c(1, 3);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  RandomStream u(9, 0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(SampleEvent, UnitMassIsAlwaysInterest) {
  const GroupScenario g{"g", PiecewiseWeibullCif(1.0, {{0.0, 1.0, 1.0}}),
                        PiecewiseWeibullCif(1.0, {{0.0, 1.0, 1.0}}), 10};
  RandomStream rng(4, 0);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(sample_event(g, rng.uniform(), rng.uniform()).second, EventCode::Interest);
  }
}

TEST(SampleEvent, ExponentialInverse) {
  const GroupScenario g{"g", PiecewiseWeibullCif(1.0, {{0.0, 1.0, 1.0}}),
                        PiecewiseWeibullCif(1.0, {{0.0, 1.0, 1.0}}), 10};
  for (double u : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(sample_event(g, 0.3, u).first, -std::log(1.0 - u), 1e-12);
  }
}

TEST(SampleEvent, EmpiricalCifMatchesKolmogorov) {
  const auto g = group();
  RandomStream rng(12, 0);
  const int n = 100000;
  std::vector<double> interest_times;
  for (int i = 0; i < n; ++i) {
    const double uc = rng.uniform(), ut = rng.uniform();
    const auto [t, code] = sample_event(g, uc, ut);
    if (code == EventCode::Interest) interest_times.push_back(t);
  }
  std::sort(interest_times.begin(), interest_times.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < interest_times.size(); ++i) {
    const double target = g.interest.incidence(interest_times[i]);
    ks = std::max({ks, std::abs((i + 1.0) / n - target), std::abs(static_cast<double>(i) / n - target)});
  }
  EXPECT_LT(ks, 0.01);
}

TEST(ApplyCensoring, TiesAreEventsAndNoBoundMeansNoCensoring) {
  EXPECT_EQ(apply_censoring(1.0, EventCode::Interest, 2.0, 0.5).second, EventCode::Interest);
  const auto c = apply_censoring(1.5, EventCode::Competing, 2.0, 0.25);
  EXPECT_EQ(c.second, EventCode::Censored);
  EXPECT_EQ(c.first, 0.5);
  EXPECT_EQ(apply_censoring(9.0, EventCode::Interest, std::nullopt, 0.0).second,
            EventCode::Interest);
  EXPECT_EQ(apply_censoring(1e6, EventCode::Interest, 1e12, 0.5).second, EventCode::Interest);
}

TEST(Calibration, TargetsAndMonotone) {
  const auto g = group();
  EXPECT_FALSE(calibrate_censoring(g, 0.0).has_value());
  double prev = INFINITY;
  for (double target : {0.15, 0.3, 0.45}) {
    const auto c = calibrate_censoring(g, target);
    ASSERT_TRUE(c.has_value());
    EXPECT_LT(*c, prev);
    prev = *c;
    RandomStream rng(777, 1);
    int censored = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const double uc = rng.uniform(), ut = rng.uniform();
      const auto [t, code] = sample_event(g, uc, ut);
      if (apply_censoring(t, code, *c, rng.uniform()).second == EventCode::Censored) ++censored;
    }
    EXPECT_NEAR(static_cast<double>(censored) / n, target, 0.01);
  }
  EXPECT_THROW(calibrate_censoring(g, 0.95), UsageError);
}

TEST(Censoring, IndependentOfEventTimes) {
  const auto g = group();
  RandomStream rng(31, 0);
  const int n = 100000;
  double st = 0, sc = 0, stt = 0, scc = 0, stc = 0;
  for (int i = 0; i < n; ++i) {
    const double uc = rng.uniform(), ut = rng.uniform();
    const double t = sample_event(g, uc, ut).first;
    const double c = 3.0 * rng.uniform();
    st += t, sc += c, stt += t * t, scc += c * c, stc += t * c;
  }
  const double cov = stc / n - (st / n) * (sc / n);
  const double corr = cov / std::sqrt((stt / n - st * st / n / n) * (scc / n - sc * sc / n / n));
  EXPECT_LT(std::abs(corr), 0.01);
}

TEST(ScenarioValidation, Rejects) {
  auto spec = null_spec();
  spec.groups[0].n = 1;
  EXPECT_THROW(validate(spec), UsageError);
  spec = null_spec();
  spec.censoring.target = 0.95;
  EXPECT_THROW(validate(spec), UsageError);
  spec = null_spec();
  spec.censoring.bound = std::array<double, 2>{1.0, 1.0};
  EXPECT_THROW(validate(spec), UsageError);
  spec = null_spec();
  spec.tau = -1.0;
  EXPECT_THROW(validate(spec), UsageError);
}

TEST(SimulateDataset, SizesAndLabels) {
  const auto spec = null_spec();
  RandomStream rng(1, 0);
  const auto s = simulate_dataset(spec, resolve_censoring(spec), rng);
  EXPECT_EQ(s.size(0), 50u);
  EXPECT_EQ(s.size(1), 50u);
  EXPECT_EQ(s.label(0), spec.groups[0].name);
}

TEST(MonteCarlo, SameSeedSameReport) {
  SimulationOptions opt;
  opt.reps = 40;
  opt.seed = 7;
  const auto a = run_monte_carlo(null_spec(), opt);
  const auto b = run_monte_carlo(null_spec(), opt);
  ASSERT_EQ(a.rates.size(), 2u);
  for (std::size_t m = 0; m < 2; ++m) {
    EXPECT_EQ(a.rates[m].rejections, b.rates[m].rejections);
    EXPECT_EQ(a.rates[m].valid, b.rates[m].valid);
  }
  EXPECT_EQ(a.mean_tau, b.mean_tau);
  EXPECT_EQ(a.tau_rule, "min-last-interest");
}

TEST(MonteCarlo, WorkersDoNotChangeResults) {
  SimulationOptions opt;
  opt.reps = 60;
  opt.seed = 3;
  auto spec = null_spec();
  spec.censoring.target = 0.3;
  const auto serial = run_monte_carlo(spec, opt);
  opt.workers = 4;
  const auto parallel = run_monte_carlo(spec, opt);
  for (std::size_t m = 0; m < 2; ++m) {
    EXPECT_EQ(serial.rates[m].rejections, parallel.rates[m].rejections);
  }
  EXPECT_EQ(serial.mean_tau, parallel.mean_tau);
  EXPECT_EQ(serial.mean_censoring_rate, parallel.mean_censoring_rate);
}

TEST(MonteCarlo, RatesAndStandardErrors) {
  SimulationOptions opt;
  opt.reps = 200;
  const auto r = run_monte_carlo(load_scenario(oracle::scenario_path("B_proportional.json")), opt);
  for (const auto& m : r.rates) {
    EXPECT_GE(m.rate, 0.0);
    EXPECT_LE(m.rate, 1.0);
    EXPECT_EQ(m.valid + r.degenerate, r.reps);
    EXPECT_NEAR(m.se, std::sqrt(m.rate * (1 - m.rate) / m.valid), 1e-15);
  }
}

TEST(MonteCarlo, DegenerateReplicationsExcluded) {
  // Interest events are rare, so tiny groups often have none.
  auto spec = null_spec();
  for (auto& g : spec.groups) {
    g.interest = PiecewiseWeibullCif(0.02, {{0.0, 1.0, 1.0}});
    g.competing = PiecewiseWeibullCif(0.98, {{0.0, 1.0, 1.0}});
    g.n = 5;
  }
  SimulationOptions opt;
  opt.reps = 100;
  const auto r = run_monte_carlo(spec, opt);
  EXPECT_GT(r.degenerate, 0);
  EXPECT_EQ(r.rates[0].valid, r.reps - r.degenerate);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(MonteCarlo, LargerSamplesRaisePower) {
  const auto spec = load_scenario(oracle::scenario_path("B_proportional.json"));
  SimulationOptions opt;
  opt.reps = 400;
  opt.group_sizes = std::array<int, 2>{50, 50};
  const auto small = run_monte_carlo(spec, opt);
  opt.group_sizes = std::array<int, 2>{100, 100};
  const auto large = run_monte_carlo(spec, opt);
  for (std::size_t m = 0; m < 2; ++m) {
    const double margin = 2.0 * std::hypot(small.rates[m].se, large.rates[m].se);
    EXPECT_GT(large.rates[m].rate, small.rates[m].rate + margin);
  }
}

TEST(ObservedPower, SmallNWarnsAndValidates) {
  SimulationOptions opt;
  opt.reps = 20;
  Diagnostics diag;
  const auto r = observed_power_at_n(null_spec(), 2, 2, Method::Diff, opt, &diag);
  EXPECT_EQ(r.method, Method::Diff);
  EXPECT_FALSE(diag.warnings.empty());
  EXPECT_THROW(observed_power_at_n(null_spec(), 1, 3, Method::Diff, opt), UsageError);
}

TEST(ObservedPower, DiffAtLeastSdiffAtEqualN) {
  const auto spec = load_scenario(oracle::scenario_path("B_proportional.json"));
  SimulationOptions opt;
  opt.reps = 400;
  const auto d = observed_power_at_n(spec, 100, 100, Method::Diff, opt);
  const auto s = observed_power_at_n(spec, 100, 100, Method::SDiff, opt);
  EXPECT_GE(d.rate, s.rate - 2.0 * std::hypot(d.se, s.se));
}
