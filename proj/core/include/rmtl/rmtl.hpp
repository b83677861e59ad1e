#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "rmtl/cif.hpp"
#include "rmtl/common.hpp"
#include "rmtl/data.hpp"

namespace rmtl {

/// Everything estimated from one group's records.
struct GroupFit {
  std::string label;
  RiskTable table;
  StepFunction km;
  StepFunction interest;
  StepFunction competing;

  int n() const noexcept { return table.total; }
};

GroupFit fit_group(std::span<const SubjectRecord> records, std::string label);

struct TwoGroupFit {
  std::array<GroupFit, 2> groups;
};

TwoGroupFit fit_groups(const TwoGroupSample& sample);

/// How to treat a truncation time beyond a group's last observed time.  The
/// estimate is constant-extrapolated and a warning issued, or, in strict
/// mode, an error is raised.
struct TauOptions {
  bool strict = false;
  Diagnostics* diagnostics = nullptr;
};

/// Minimum over the two groups of the last event-of-interest time.
/// Throws DataError when a group has no events of interest.
double default_tau(const TwoGroupFit& fit);

void validate_tau(const GroupFit& group, double tau, const TauOptions& options = {});

/// Exact integral of a step function over [0, tau].
double step_area(const StepFunction& f, double tau);

/// Exact integral of t * f(t) over [0, tau].
double step_first_moment(const StepFunction& f, double tau);

/// Restricted mean time lost: area under the cumulative incidence on [0, tau].
double rmtl(const StepFunction& cif, double tau);

/// Per-subject variance of the time lost:
///   2 tau A - 2 B - A^2,  A = int_0^tau I(t) dt,  B = int_0^tau t I(t) dt.
double rmtl_variance(const StepFunction& cif, double tau);

/// Restricted mean event-free time: area under the Kaplan-Meier curve.
double rmstc(const StepFunction& km, double tau);

struct RmtlEstimate {
  double value = 0.0;
  double variance = 0.0;  // per-subject; divide by n for the estimator variance
  int n = 0;
  double tau = 0.0;
};

RmtlEstimate estimate_rmtl(const GroupFit& group, double tau, EventCode cause = EventCode::Interest,
                           const TauOptions& options = {});

/// Normal-approximation interval value +/- z_{1-alpha/2} sqrt(variance / n),
/// clipped to [0, tau].
Interval rmtl_ci(const RmtlEstimate& est, double alpha);

struct RmtlDifference {
  double delta = 0.0;  // group 2 minus group 1
  double se = 0.0;
  double tau = 0.0;
  std::array<std::string, 2> labels;
  std::array<RmtlEstimate, 2> groups;
};

RmtlDifference rmtl_difference(const TwoGroupFit& fit, double tau, const TauOptions& options = {});
RmtlDifference rmtl_difference(const TwoGroupSample& sample, double tau,
                               const TauOptions& options = {});

/// delta +/- z_{1-alpha/2} se.
Interval difference_ci(const RmtlDifference& diff, double alpha);

void validate_alpha(double alpha);

}  // namespace rmtl
