#include "rmtl/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace rmtl {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  const std::uint64_t key = splitmix64(state) ^ (stream * 0xD1B54A32D192ED03ULL);
  state = key;
  for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t RandomStream::next() noexcept {
  const auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

void validate(const ScenarioSpec& spec) {
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& g = spec.groups[k];
    const std::string where = "groups[" + std::to_string(k) + "]";
    if (g.n < 2) throw UsageError(where + ".n: group size must be at least 2");
    const double total = g.interest.mass() + g.competing.mass();
    if (std::abs(total - 1.0) > 1e-9) {
      throw UsageError(where + ": interest.p + competing.p must equal 1");
    }
  }
  if (spec.censoring.target && spec.censoring.bound) {
    throw UsageError("censoring: give either target or c, not both");
  }
  if (spec.censoring.target) {
    const double t = *spec.censoring.target;
    if (!(t >= 0.0 && t <= 0.9)) throw UsageError("censoring.target must lie in [0, 0.9]");
  }
  if (spec.censoring.bound) {
    for (double c : *spec.censoring.bound) {
      if (!(c > 0.0)) throw UsageError("censoring.c must be positive");
    }
  }
  if (spec.tau && !(*spec.tau > 0.0 && std::isfinite(*spec.tau))) {
    throw UsageError("tau must be positive and finite");
  }
}

std::pair<double, EventCode> sample_event(const GroupScenario& group, double u_cause,
                                          double u_time) {
  if (u_cause < group.interest.mass()) {
    return {group.interest.quantile(u_time), EventCode::Interest};
  }
  return {group.competing.quantile(u_time), EventCode::Competing};
}

std::pair<double, EventCode> apply_censoring(double event_time, EventCode code,
                                             std::optional<double> bound, double u) {
  if (!bound) return {event_time, code};
  const double c = u * *bound;
  if (c < event_time) return {c, EventCode::Censored};
  return {event_time, code};
}

namespace {

constexpr std::uint64_t kCalibrationSeed = 0x5EED'CA11'B4A7'E000ULL;
constexpr int kCalibrationDraws = 100'000;

}  // namespace

std::optional<double> calibrate_censoring(const GroupScenario& group, double target) {
  if (!(target >= 0.0 && target <= 0.9)) {
    throw UsageError("censoring target must lie in [0, 0.9]");
  }
  if (target == 0.0) return std::nullopt;

  RandomStream rng(kCalibrationSeed, 0);
  std::vector<double> times(kCalibrationDraws);
  std::vector<double> u(kCalibrationDraws);
  for (int i = 0; i < kCalibrationDraws; ++i) {
    const double uc = rng.uniform();
    const double ut = rng.uniform();
    times[i] = sample_event(group, uc, ut).first;
    u[i] = rng.uniform();
  }
  auto rate = [&](double c) {
    int censored = 0;
    for (int i = 0; i < kCalibrationDraws; ++i) censored += (u[i] * c < times[i]) ? 1 : 0;
    return static_cast<double>(censored) / kCalibrationDraws;
  };

  double lo = 1.0;
  double hi = 1.0;
  for (int k = 0; rate(lo) < target; ++k) {
    if (k > 200) throw NumericError("censoring calibration: target rate unreachable");
    lo /= 2.0;
  }
  for (int k = 0; rate(hi) > target; ++k) {
    if (k > 200) throw NumericError("censoring calibration: target rate unreachable");
    hi *= 2.0;
  }
  double best = hi;
  double best_err = std::abs(rate(hi) - target);
  for (int it = 0; it < 200 && best_err > 1e-4; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = rate(mid);
    if (std::abs(r - target) < best_err) {
      best = mid;
      best_err = std::abs(r - target);
    }
    (r > target ? lo : hi) = mid;
    if (hi - lo <= 1e-14 * hi) break;
  }
  if (best_err > 0.005) throw NumericError("censoring calibration did not reach the target rate");
  return best;
}

CensoringBounds resolve_censoring(const ScenarioSpec& spec) {
  CensoringBounds out;
  if (spec.censoring.bound) {
    out[0] = (*spec.censoring.bound)[0];
    out[1] = (*spec.censoring.bound)[1];
  } else if (spec.censoring.target) {
    for (std::size_t k = 0; k < 2; ++k) {
      out[k] = calibrate_censoring(spec.groups[k], *spec.censoring.target);
    }
  }
  return out;
}

TwoGroupSample simulate_dataset(const ScenarioSpec& spec, const CensoringBounds& bounds,
                                RandomStream& rng) {
  std::vector<SubjectRecord> records;
  records.reserve(static_cast<std::size_t>(spec.groups[0].n + spec.groups[1].n));
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& g = spec.groups[k];
    for (int i = 0; i < g.n; ++i) {
      const double uc = rng.uniform();
      const double ut = rng.uniform();
      const double ucens = rng.uniform();
      const auto [t, code] = sample_event(g, uc, ut);
      const auto [obs, observed_code] = apply_censoring(t, code, bounds[k], ucens);
      records.push_back({obs, observed_code, g.name});
    }
  }
  return TwoGroupSample(std::move(records));
}

namespace {

struct Outcome {
  bool degenerate = false;
  bool extrapolated = false;
  double tau = 0.0;
  double censoring_rate = 0.0;
  std::vector<char> reject;
};

Outcome run_replication(const ScenarioSpec& spec, const CensoringBounds& bounds,
                        const SimulationOptions& options, int r) {
  Outcome out;
  auto rng = replication_stream(options.seed, static_cast<std::uint64_t>(r));
  const auto sample = simulate_dataset(spec, bounds, rng);
  const auto fit = fit_groups(sample);
  int censored = 0;
  for (const auto& g : fit.groups) censored += g.table.censored;
  out.censoring_rate = static_cast<double>(censored) / static_cast<double>(sample.records().size());

  for (const auto& g : fit.groups) {
    if (g.table.events(EventCode::Interest) == 0) {
      out.degenerate = true;
      return out;
    }
  }
  try {
    out.tau = spec.tau ? *spec.tau : default_tau(fit);
    for (const auto& g : fit.groups) {
      if (out.tau > g.table.last_observed) out.extrapolated = true;
    }
    for (Method m : options.methods) {
      const auto res = m == Method::Diff
                           ? diff_test(fit, out.tau, options.alpha)
                           : sdiff_test(fit, out.tau, options.alpha, options.rho, options.series);
      out.reject.push_back(res.reject ? 1 : 0);
    }
  } catch (const DataError&) {
    out.degenerate = true;
    out.reject.clear();
  }
  return out;
}

}  // namespace

SimulationReport run_monte_carlo(const ScenarioSpec& base, const SimulationOptions& options) {
  if (options.reps < 1) throw UsageError("reps must be at least 1");
  if (options.workers < 1) throw UsageError("workers must be at least 1");
  if (options.methods.empty()) throw UsageError("at least one method is required");
  validate_alpha(options.alpha);
  validate(options.series);
  if (!(options.rho >= 0.0 && options.rho <= 1.0)) throw UsageError("rho must lie in [0, 1]");

  ScenarioSpec spec = base;
  if (options.group_sizes) {
    spec.groups[0].n = (*options.group_sizes)[0];
    spec.groups[1].n = (*options.group_sizes)[1];
  }
  validate(spec);

  SimulationReport report;
  report.label = spec.label;
  report.seed = options.seed;
  report.reps = options.reps;
  report.group_sizes = {spec.groups[0].n, spec.groups[1].n};
  report.tau_rule = spec.tau ? "fixed" : "min-last-interest";
  report.censoring_bounds = resolve_censoring(spec);

  std::vector<Outcome> outcomes(static_cast<std::size_t>(options.reps));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int r = next.fetch_add(1); r < options.reps; r = next.fetch_add(1)) {
      outcomes[static_cast<std::size_t>(r)] =
          run_replication(spec, report.censoring_bounds, options, r);
    }
  };
  const int workers = std::min(options.workers, options.reps);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  report.rates.resize(options.methods.size());
  for (std::size_t m = 0; m < options.methods.size(); ++m) report.rates[m].method = options.methods[m];
  int extrapolated = 0;
  double tau_sum = 0.0, cens_sum = 0.0;
  for (const auto& o : outcomes) {
    cens_sum += o.censoring_rate;
    if (o.degenerate) {
      ++report.degenerate;
      continue;
    }
    tau_sum += o.tau;
    if (o.extrapolated) ++extrapolated;
    for (std::size_t m = 0; m < o.reject.size(); ++m) {
      ++report.rates[m].valid;
      report.rates[m].rejections += o.reject[m];
    }
  }
  for (auto& rate : report.rates) {
    if (rate.valid > 0) {
      rate.rate = static_cast<double>(rate.rejections) / rate.valid;
      rate.se = std::sqrt(rate.rate * (1.0 - rate.rate) / rate.valid);
    }
  }
  const int valid = options.reps - report.degenerate;
  report.mean_tau = valid > 0 ? tau_sum / valid : 0.0;
  report.mean_censoring_rate = cens_sum / options.reps;
  if (report.degenerate > 0) {
    report.warnings.push_back(std::to_string(report.degenerate) +
                              " replication(s) had a group without events of interest and "
                              "were excluded");
  }
  if (extrapolated > 0) {
    report.warnings.push_back(std::to_string(extrapolated) +
                              " replication(s) used tau beyond a group's last observed time");
  }
  if (std::min(spec.groups[0].n, spec.groups[1].n) < 10) {
    report.warnings.push_back("fewer than 10 subjects in a group; the normal approximation is "
                              "unreliable");
  }
  return report;
}

MethodRate observed_power_at_n(const ScenarioSpec& spec, int n1, int n2, Method method,
                               SimulationOptions options, Diagnostics* diagnostics) {
  if (n1 + n2 < 4 || n1 < 2 || n2 < 2) {
    throw UsageError("observed power needs at least 2 subjects per group (n_total >= 4)");
  }
  options.methods = {method};
  options.group_sizes = std::array<int, 2>{n1, n2};
  const auto report = run_monte_carlo(spec, options);
  for (const auto& w : report.warnings) warn(diagnostics, w);
  return report.rates.front();
}

}  // namespace rmtl
