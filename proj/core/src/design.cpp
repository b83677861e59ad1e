#include "rmtl/design.hpp"

#include <cmath>
#include <limits>

#include "rmtl/normal.hpp"

namespace rmtl {

void validate(const DesignInput& in) {
  if (!std::isfinite(in.delta) || in.delta == 0.0) {
    throw UsageError("RMTL difference is zero; the required sample size is unbounded");
  }
  if (!(in.var1 >= 0.0) || !(in.var2 >= 0.0) || !std::isfinite(in.var1) ||
      !std::isfinite(in.var2)) {
    throw UsageError("variances must be finite and nonnegative");
  }
  if (!(in.ratio > 0.0) || !std::isfinite(in.ratio)) throw UsageError("ratio must be positive");
  if (!(in.alpha > 0.0 && in.alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
  if (!(in.power > 0.0 && in.power < 1.0)) throw UsageError("power must lie in (0, 1)");
}

namespace {

void split(SampleSizeResult& res, double ratio) {
  const auto bounded = [](double v) {
    if (!(v < static_cast<double>(std::numeric_limits<int>::max() / 4))) {
      throw NumericError("sample size overflows");
    }
    return std::max(1, static_cast<int>(std::ceil(v)));
  };
  // A tiny relative slack keeps exact integers from rounding up through
  // floating noise.
  const double slack = 1e-12;
  res.n1 = bounded(res.raw_n / (1.0 + ratio) * (1.0 - slack));
  res.n2 = bounded(ratio * res.raw_n / (1.0 + ratio) * (1.0 - slack));
  res.n_total = res.n1 + res.n2;
}

}  // namespace

SampleSizeResult sample_size_diff(const DesignInput& in) {
  validate(in);
  SampleSizeResult res;
  res.method = Method::Diff;
  const double z_alpha = normal_quantile(1.0 - in.alpha / 2.0);
  const double z_beta = normal_quantile(in.power);
  res.critical_value = z_alpha;
  res.eta_tilde = z_alpha + z_beta;
  res.eta = res.eta_tilde;
  res.degenerate = in.var1 == 0.0 && in.var2 == 0.0;
  const double zsum = z_beta + z_alpha;
  res.raw_n = (1.0 + in.ratio) * zsum * zsum * (in.var1 + in.var2 / in.ratio) /
              (in.delta * in.delta);
  split(res, in.ratio);
  return res;
}

SampleSizeResult sample_size_sdiff(const DesignInput& in, const SeriesConfig& cfg) {
  const auto base = sample_size_diff(in);
  SampleSizeResult res = base;
  res.method = Method::SDiff;
  res.critical_value = sup_abs_bm_quantile(in.alpha, cfg);
  res.eta_tilde = base.eta_tilde;
  res.eta = solve_eta(res.critical_value, in.power, res.eta_tilde).eta;
  if (res.eta_tilde == 0.0) {
    throw NumericError("eta_tilde is zero (power equals alpha/2 level); xi is undefined");
  }
  res.xi = (res.eta * res.eta) / (res.eta_tilde * res.eta_tilde);
  res.raw_n = res.xi * base.raw_n;
  split(res, in.ratio);
  return res;
}

PilotParameters pilot_parameters(const TwoGroupSample& pilot, std::optional<double> tau,
                                 const TauOptions& options) {
  const auto fit = fit_groups(pilot);
  for (const auto& g : fit.groups) {
    if (g.table.events(EventCode::Interest) == 0) {
      throw DataError("pilot group '" + g.label + "' has no events of interest");
    }
  }
  PilotParameters p;
  p.tau = tau ? *tau : default_tau(fit);
  const auto diff = rmtl_difference(fit, p.tau, options);
  p.delta = diff.delta;
  p.var1 = diff.groups[0].variance;
  p.var2 = diff.groups[1].variance;
  return p;
}

}  // namespace rmtl
