#include "rmtl/inference.hpp"

#include <algorithm>
#include <cmath>

#include "rmtl/normal.hpp"

namespace rmtl {

std::string_view to_string(Method method) {
  return method == Method::Diff ? "Diff" : "sDiff";
}

Method parse_method(std::string_view name) {
  if (name == "Diff" || name == "diff") return Method::Diff;
  if (name == "sDiff" || name == "sdiff") return Method::SDiff;
  throw UsageError("unknown method '" + std::string(name) + "' (expected Diff or sDiff)");
}

TestResult diff_test(const TwoGroupFit& fit, double tau, double alpha,
                     const TauOptions& options) {
  validate_alpha(alpha);
  TestResult res;
  res.method = Method::Diff;
  res.alpha = alpha;
  res.delta = rmtl_difference(fit, tau, options);
  res.normalizer = res.delta.se;
  if (!(res.delta.se > 0.0)) {
    throw DataError("Diff test: standard error of the RMTL difference is zero");
  }
  res.statistic = res.delta.delta / res.delta.se;
  res.p_value = std::clamp(2.0 * normal_sf(std::abs(res.statistic)), 0.0, 1.0);
  res.reject = res.p_value < alpha;
  return res;
}

TestResult diff_test(const TwoGroupSample& sample, double tau, double alpha,
                     const TauOptions& options) {
  return diff_test(fit_groups(sample), tau, alpha, options);
}

PartialDifferenceProcess partial_process(const TwoGroupFit& fit, double tau) {
  if (!std::isfinite(tau) || tau <= 0.0) throw UsageError("tau must be positive and finite");
  PartialDifferenceProcess p;
  p.tau = tau;
  for (const auto& g : fit.groups) {
    for (double t : g.km.times) {
      if (t <= tau) p.grid.push_back(t);
    }
  }
  std::sort(p.grid.begin(), p.grid.end());
  p.grid.erase(std::unique(p.grid.begin(), p.grid.end()), p.grid.end());
  if (p.grid.empty()) throw DataError("no event times at or before tau");

  const auto& g1 = fit.groups[0].interest;
  const auto& g2 = fit.groups[1].interest;
  const std::size_t k = p.grid.size();
  p.widths.resize(k);
  p.partial.resize(k);
  p.summed_variance.resize(k);
  double running = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double t = p.grid[i];
    const double next = i + 1 < k ? p.grid[i + 1] : tau;
    p.widths[i] = next - t;
    running += (g2.at(t) - g1.at(t)) * p.widths[i];
    p.partial[i] = running;
    p.summed_variance[i] = g2.variance_at(t) + g1.variance_at(t);
  }
  return p;
}

double sdiff_sigma(std::span<const double> widths, std::span<const double> summed_variance,
                   double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw UsageError("rho must lie in [0, 1]");
  if (widths.size() != summed_variance.size()) {
    throw UsageError("sdiff_sigma: widths and variances differ in length");
  }
  // The cross sum over i < i' equals ((sum s_i)^2 - sum s_i^2) / 2 with
  // s_i = w_i sqrt(v_i).
  double diag = 0.0;
  double total = 0.0;
  bool any_variance = false;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (summed_variance[i] < 0.0) throw UsageError("sdiff_sigma: negative variance");
    if (summed_variance[i] > 0.0) any_variance = true;
    const double s = widths[i] * std::sqrt(summed_variance[i]);
    diag += s * s;
    total += s;
  }
  if (!any_variance) throw DataError("sDiff test: all CIF variances are zero");
  const double sigma2 = diag + rho * (total * total - diag);
  if (!(sigma2 > 0.0)) throw DataError("sDiff test: normalizer sigma(tau) is zero");
  return std::sqrt(sigma2);
}

double sdiff_sigma(const PartialDifferenceProcess& process, double rho) {
  return sdiff_sigma(process.widths, process.summed_variance, rho);
}

double sdiff_p_value(double statistic, const SeriesConfig& cfg) {
  if (std::isnan(statistic) || statistic < 0.0) throw UsageError("Q_S must be nonnegative");
  if (statistic == 0.0) return 1.0;
  return sup_abs_bm_sf(statistic, cfg);
}

TestResult sdiff_test(const TwoGroupFit& fit, double tau, double alpha, double rho,
                      const SeriesConfig& cfg, const TauOptions& options) {
  validate_alpha(alpha);
  TestResult res;
  res.method = Method::SDiff;
  res.alpha = alpha;
  res.delta = rmtl_difference(fit, tau, options);
  const auto process = partial_process(fit, tau);
  res.normalizer = sdiff_sigma(process, rho);
  double sup = 0.0;
  for (double v : process.partial) sup = std::max(sup, std::abs(v));
  res.statistic = sup / res.normalizer;
  res.p_value = std::clamp(sdiff_p_value(res.statistic, cfg), 0.0, 1.0);
  res.reject = res.p_value < alpha;
  return res;
}

TestResult sdiff_test(const TwoGroupSample& sample, double tau, double alpha, double rho,
                      const SeriesConfig& cfg, const TauOptions& options) {
  return sdiff_test(fit_groups(sample), tau, alpha, rho, cfg, options);
}

}  // namespace rmtl
