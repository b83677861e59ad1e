#pragma once

#include "rmtl/common.hpp"

namespace rmtl {

/// Truncation control for the supremum series.
struct SeriesConfig {
  double eps = 1e-10;     // permissible error
  int max_terms = 1'000'000;
};

void validate(const SeriesConfig& cfg);

/// Number of leading series terms needed at permissible error eps:
///   m = max{ ceil( (x sqrt 2 / pi) sqrt(log(1 / (pi eps)) - 1/2) ), 1 }.
/// For eps outside (0, 1/pi) or when the radicand is negative the floor m = 1
/// applies and a warning is issued.
int series_terms(double x, double eps, Diagnostics* diagnostics = nullptr);

/// P[ sup_{0<=t<=1} |M(t)| > x ] for standard Brownian motion M:
///   1 - (4/pi) sum_{a>=0} (-1)^a / (2a+1) exp(-pi^2 (2a+1)^2 / (8 x^2)).
/// Sums at least series_terms(x, eps) terms and continues until the next term
/// is below eps.  Clamped to [0, 1].
double sup_abs_bm_sf(double x, const SeriesConfig& cfg = {});

/// Inverse of sup_abs_bm_sf: the x with survival probability p.
double sup_abs_bm_quantile(double p, const SeriesConfig& cfg = {});

/// Upper-boundary crossing probability over [0, 1] of Brownian motion with
/// drift `drift`, boundary `boundary`:
///   Y = Phibar(boundary - drift) + exp(2 boundary drift) Phibar(boundary + drift).
/// The exponential is paired with the Gaussian tail in log space.
double drift_crossing(double boundary, double drift);

/// d/d(drift) of drift_crossing:
///   phi(u - x) + 2u exp(2ux) Phibar(u + x) - exp(2ux) phi(u + x).
double drift_crossing_derivative(double boundary, double drift);

struct EtaSolution {
  double eta = 0.0;
  int iterations = 0;
  bool bisection = false;  // Newton was abandoned for the bracketing fallback
};

/// Solves drift_crossing(critical, eta) = target_power for eta by Newton
/// iteration from eta0, accumulating the corrections
///   o_i = (target - Y(eta_i)) / Y'(eta_i),
/// with a bisection fallback on a bracket.  Residual below 1e-10 on success.
EtaSolution solve_eta(double critical, double target_power, double eta0);

}  // namespace rmtl
