#pragma once

#include <optional>

#include "rmtl/brownian.hpp"
#include "rmtl/data.hpp"
#include "rmtl/inference.hpp"

namespace rmtl {

/// Planning assumptions for a two-group trial.  var1 and var2 are per-subject
/// time-lost variances (the rmtl_variance scale), ratio is n2 / n1.
struct DesignInput {
  double delta = 0.0;
  double var1 = 0.0;
  double var2 = 0.0;
  double ratio = 1.0;
  double alpha = 0.05;
  double power = 0.8;
  std::optional<double> tau;
};

void validate(const DesignInput& in);

struct SampleSizeResult {
  Method method = Method::Diff;
  double raw_n = 0.0;  // unrounded total from the formula
  int n1 = 0;
  int n2 = 0;
  int n_total = 0;
  double xi = 1.0;
  double eta = 0.0;
  double eta_tilde = 0.0;
  double critical_value = 0.0;  // z_{1-alpha/2} for Diff, sup|M| quantile for sDiff
  bool degenerate = false;      // both variances zero
};

/// n = (1 + r) (z_{1-beta} + z_{1-alpha/2})^2 (var1 + var2 / r) / delta^2,
/// split as n1 = ceil(n / (1 + r)), n2 = ceil(r n / (1 + r)), each at least 1.
SampleSizeResult sample_size_diff(const DesignInput& in);

/// Inflates the Diff size by xi = eta^2 / eta_tilde^2, where
/// eta_tilde = z_{1-alpha/2} + z_{1-beta} and eta solves
///   Phibar(V - eta) + exp(2 eta V) Phibar(V + eta) = 1 - beta
/// with V the sup|M| critical value at two-sided level alpha.
SampleSizeResult sample_size_sdiff(const DesignInput& in, const SeriesConfig& cfg = {});

struct PilotParameters {
  double delta = 0.0;
  double var1 = 0.0;
  double var2 = 0.0;
  double tau = 0.0;
};

/// Estimates delta and the two per-subject variances from pilot data.  Uses
/// the default tau rule when tau is not given.
PilotParameters pilot_parameters(const TwoGroupSample& pilot, std::optional<double> tau = {},
                                 const TauOptions& options = {});

}  // namespace rmtl
