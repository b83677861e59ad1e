#include "rmtl/rmtl.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rmtl/normal.hpp"

namespace rmtl {

GroupFit fit_group(std::span<const SubjectRecord> records, std::string label) {
  GroupFit g;
  g.label = std::move(label);
  g.table = build_risk_table(records);
  g.km = km_overall(g.table);
  g.interest = cif_estimate(g.table, EventCode::Interest);
  g.competing = cif_estimate(g.table, EventCode::Competing);
  return g;
}

TwoGroupFit fit_groups(const TwoGroupSample& sample) {
  TwoGroupFit fit;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto records = sample.group(k);
    fit.groups[k] = fit_group(records, sample.label(k));
  }
  return fit;
}

double default_tau(const TwoGroupFit& fit) {
  double tau = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& last = fit.groups[k].table.last_interest;
    if (!last) {
      throw DataError("group '" + fit.groups[k].label +
                      "' has no events of interest; default tau is undefined");
    }
    tau = k == 0 ? *last : std::min(tau, *last);
  }
  if (!(tau > 0.0)) throw DataError("default tau is zero: last events of interest occur at time 0");
  return tau;
}

void validate_tau(const GroupFit& group, double tau, const TauOptions& options) {
  if (!std::isfinite(tau) || tau <= 0.0) throw UsageError("tau must be positive and finite");
  if (tau > group.table.last_observed) {
    std::ostringstream msg;
    msg << "tau " << tau << " exceeds the last observed time " << group.table.last_observed
        << " in group '" << group.label << "'";
    if (options.strict) throw DataError(msg.str());
    warn(options.diagnostics, msg.str() + "; estimates are held constant beyond it");
  }
}

namespace {

void require_positive_tau(double tau) {
  if (!std::isfinite(tau) || tau <= 0.0) throw UsageError("tau must be positive and finite");
}

// Calls visit(a, b, value) for every piece of the step function on [0, tau].
template <class Visit>
void for_each_piece(const StepFunction& f, double tau, Visit visit) {
  double left = 0.0;
  double value = f.value_before_first;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double t = std::max(f.times[i], 0.0);
    if (t >= tau) break;
    if (t > left) visit(left, t, value);
    left = t;
    value = f.values[i];
  }
  if (tau > left) visit(left, tau, value);
}

}  // namespace

double step_area(const StepFunction& f, double tau) {
  require_positive_tau(tau);
  double area = 0.0;
  for_each_piece(f, tau, [&](double a, double b, double v) { area += v * (b - a); });
  return area;
}

double step_first_moment(const StepFunction& f, double tau) {
  require_positive_tau(tau);
  double m = 0.0;
  for_each_piece(f, tau, [&](double a, double b, double v) { m += v * (b * b - a * a) / 2.0; });
  return m;
}

double rmtl(const StepFunction& cif, double tau) { return step_area(cif, tau); }

double rmtl_variance(const StepFunction& cif, double tau) {
  const double area = step_area(cif, tau);
  const double moment = step_first_moment(cif, tau);
  return std::max(0.0, 2.0 * tau * area - 2.0 * moment - area * area);
}

double rmstc(const StepFunction& km, double tau) { return step_area(km, tau); }

RmtlEstimate estimate_rmtl(const GroupFit& group, double tau, EventCode cause,
                           const TauOptions& options) {
  validate_tau(group, tau, options);
  const auto& cif = cause == EventCode::Competing ? group.competing : group.interest;
  return {rmtl(cif, tau), rmtl_variance(cif, tau), group.n(), tau};
}

void validate_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
}

Interval rmtl_ci(const RmtlEstimate& est, double alpha) {
  validate_alpha(alpha);
  if (est.n < 2) throw UsageError("confidence interval requires n >= 2");
  const double half = normal_quantile(1.0 - alpha / 2.0) * std::sqrt(est.variance / est.n);
  return {std::clamp(est.value - half, 0.0, est.tau), std::clamp(est.value + half, 0.0, est.tau)};
}

RmtlDifference rmtl_difference(const TwoGroupFit& fit, double tau, const TauOptions& options) {
  RmtlDifference d;
  d.tau = tau;
  for (std::size_t k = 0; k < 2; ++k) {
    d.labels[k] = fit.groups[k].label;
    d.groups[k] = estimate_rmtl(fit.groups[k], tau, EventCode::Interest, options);
  }
  d.delta = d.groups[1].value - d.groups[0].value;
  d.se = std::sqrt(d.groups[0].variance / d.groups[0].n + d.groups[1].variance / d.groups[1].n);
  return d;
}

RmtlDifference rmtl_difference(const TwoGroupSample& sample, double tau,
                               const TauOptions& options) {
  return rmtl_difference(fit_groups(sample), tau, options);
}

Interval difference_ci(const RmtlDifference& diff, double alpha) {
  validate_alpha(alpha);
  const double half = normal_quantile(1.0 - alpha / 2.0) * diff.se;
  return {diff.delta - half, diff.delta + half};
}

}  // namespace rmtl
