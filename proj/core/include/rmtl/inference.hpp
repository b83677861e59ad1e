#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "rmtl/brownian.hpp"
#include "rmtl/rmtl.hpp"

namespace rmtl {

enum class Method { Diff, SDiff };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct TestResult {
  Method method = Method::Diff;
  double statistic = 0.0;  // Z for Diff, Q_S for sDiff
  double p_value = 1.0;
  double normalizer = 0.0;  // se of the difference (Diff) or sigma(tau) (sDiff)
  RmtlDifference delta;
  double alpha = 0.05;
  bool reject = false;
};

/// Z = delta / se with two-sided normal p-value.  Throws DataError when the
/// standard error is zero.
TestResult diff_test(const TwoGroupFit& fit, double tau, double alpha,
                     const TauOptions& options = {});
TestResult diff_test(const TwoGroupSample& sample, double tau, double alpha,
                     const TauOptions& options = {});

/// Cumulative area between the two interest CIFs on the pooled event-time grid:
///   partial[r] = sum_{i <= r} [I_2(t_i) - I_1(t_i)] (t_{i+1} - t_i),
/// with t_{i+1} clipped at tau for the last grid point.
struct PartialDifferenceProcess {
  std::vector<double> grid;
  std::vector<double> widths;           // t_{i+1} - t_i
  std::vector<double> partial;          // running Delta(t_r)
  std::vector<double> summed_variance;  // V[I_2(t_i)] + V[I_1(t_i)]
  double tau = 0.0;
};

PartialDifferenceProcess partial_process(const TwoGroupFit& fit, double tau);

/// sigma^2 = sum w_i^2 v_i + sum_{i < i'} 2 rho w_i w_i' sqrt(v_i) sqrt(v_i').
/// Throws DataError when every summed variance is zero.
double sdiff_sigma(std::span<const double> widths, std::span<const double> summed_variance,
                   double rho);
double sdiff_sigma(const PartialDifferenceProcess& process, double rho);

/// Q_S = max_r |Delta(t_r)| / sigma(tau), p-value from the sup|M| law.
TestResult sdiff_test(const TwoGroupFit& fit, double tau, double alpha, double rho = 0.5,
                      const SeriesConfig& cfg = {}, const TauOptions& options = {});
TestResult sdiff_test(const TwoGroupSample& sample, double tau, double alpha, double rho = 0.5,
                      const SeriesConfig& cfg = {}, const TauOptions& options = {});

/// p-value for an observed Q_S (1 at Q_S = 0).
double sdiff_p_value(double statistic, const SeriesConfig& cfg = {});

}  // namespace rmtl
