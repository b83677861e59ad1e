#pragma once

#include <cstddef>
#include <vector>

#include "rmtl/data.hpp"

namespace rmtl {

/// Right-continuous step function with pointwise variances.  Steps sit at the
/// event times of the risk table it was estimated from; a step may repeat the
/// previous value (for a CIF the value only moves at times with events of its
/// own cause, while its variance moves at every event time).
struct StepFunction {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> variances;
  double value_before_first = 0.0;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }

  /// Value at t using right-continuity.
  double at(double t) const;
  /// Value just before t.
  double left_limit(double t) const;
  /// Variance at t; zero before the first step.
  double variance_at(double t) const;
};

/// Kaplan-Meier estimate of being free of any event, with Greenwood variances.
StepFunction km_overall(const RiskTable& table);

/// Aalen-Johansen cumulative incidence for one cause:
///   I_j(t) = sum_{t_i <= t} (d_ij / n_i) S(t_{i-1}).
/// Variances are attached (see cif_variance).  When the other cause never
/// occurs the estimate is computed as 1 - S(t) so it coincides with the
/// Kaplan-Meier complement exactly.
StepFunction cif_estimate(const RiskTable& table, EventCode cause);

/// Delta-method variance of the cumulative incidence estimator at every row of
/// the risk table:
///
///   V(t) = sum_{t_i <= t} [ (I(t) - I(t_i))^2 d_i / (n_i (n_i - d_i))
///                         + S(t_{i-1})^2 d_ij (n_i - d_ij) / n_i^3
///                         - 2 (I(t) - I(t_i)) S(t_{i-1}) d_ij / n_i^2 ]
///
/// where d_i counts events of either cause.  Rows with n_i = d_i end the
/// follow-up and contribute only the middle term.
std::vector<double> cif_variance(const RiskTable& table, EventCode cause);

}  // namespace rmtl
