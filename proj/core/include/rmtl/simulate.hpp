#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rmtl/brownian.hpp"
#include "rmtl/data.hpp"
#include "rmtl/inference.hpp"
#include "rmtl/piecewise_weibull.hpp"
#include "rmtl/random.hpp"

namespace rmtl {

struct GroupScenario {
  std::string name;
  PiecewiseWeibullCif interest;
  PiecewiseWeibullCif competing;
  int n = 0;
};

/// Uniform(0, c) censoring.  Either a target censoring rate (calibrated per
/// group) or explicit per-group upper bounds; neither means no censoring.
struct CensoringSpec {
  std::optional<double> target;
  std::optional<std::array<double, 2>> bound;
};

struct ScenarioSpec {
  std::string label;
  std::string description;
  std::array<GroupScenario, 2> groups;
  CensoringSpec censoring;
  /// Fixed truncation time; when absent each replication uses the minimum
  /// over groups of the last event-of-interest time.
  std::optional<double> tau;
};

void validate(const ScenarioSpec& spec);

/// Reads a scenario from JSON text:
///   {"label": "B", "n": 100 | [n1, n2],
///    "groups": [{"name": ..., "interest": {"p": .., "segments": [{"start", "shape", "scale"}]},
///                "competing": {...}}, {...}],
///    "censoring": {"target": 0.15} | {"c": 10 | [c1, c2]},
///    "tau": optional}
/// Errors name the offending field.
ScenarioSpec parse_scenario(std::string_view json_text);
ScenarioSpec load_scenario(const std::string& path);
std::string scenario_to_json(const ScenarioSpec& spec);

/// Draws one event: Interest with probability p_interest, time from the
/// cause's conditional distribution by inverse transform.
std::pair<double, EventCode> sample_event(const GroupScenario& group, double u_cause,
                                          double u_time);

/// Observed (min(T, C), code) with C = u * bound; ties T = C stay events.
/// A missing bound means no censoring.
std::pair<double, EventCode> apply_censoring(double event_time, EventCode code,
                                             std::optional<double> bound, double u);

/// Uniform censoring bound reaching the target rate for this group, by
/// bisection on a fixed-seed Monte Carlo rate estimate (1e5 draws).  Returns
/// nullopt for target 0.
std::optional<double> calibrate_censoring(const GroupScenario& group, double target);

using CensoringBounds = std::array<std::optional<double>, 2>;

CensoringBounds resolve_censoring(const ScenarioSpec& spec);

/// One simulated dataset.  Per subject three uniforms are consumed in order:
/// cause, event time, censoring.
TwoGroupSample simulate_dataset(const ScenarioSpec& spec, const CensoringBounds& bounds,
                                RandomStream& rng);

inline RandomStream replication_stream(std::uint64_t seed, std::uint64_t replication) {
  return RandomStream(seed, replication);
}

struct SimulationOptions {
  std::vector<Method> methods{Method::Diff, Method::SDiff};
  int reps = 1000;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  double rho = 0.5;
  SeriesConfig series;
  int workers = 1;
  std::optional<std::array<int, 2>> group_sizes;  // overrides the scenario's n
};

struct MethodRate {
  Method method = Method::Diff;
  int rejections = 0;
  int valid = 0;
  double rate = 0.0;
  double se = 0.0;  // sqrt(rate (1 - rate) / valid)
};

struct SimulationReport {
  std::string label;
  std::uint64_t seed = 0;
  int reps = 0;
  std::array<int, 2> group_sizes{};
  std::string tau_rule;
  CensoringBounds censoring_bounds;
  std::vector<MethodRate> rates;
  int degenerate = 0;  // replications excluded from every rate
  double mean_tau = 0.0;
  double mean_censoring_rate = 0.0;
  std::vector<std::string> warnings;
};

SimulationReport run_monte_carlo(const ScenarioSpec& spec, const SimulationOptions& options);

/// Power of one method at designed group sizes.
MethodRate observed_power_at_n(const ScenarioSpec& spec, int n1, int n2, Method method,
                               SimulationOptions options, Diagnostics* diagnostics = nullptr);

}  // namespace rmtl
