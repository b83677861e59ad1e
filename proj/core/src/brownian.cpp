#include "rmtl/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rmtl/normal.hpp"

namespace rmtl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidualTol = 1e-10;

double series_term(int a, double x) {
  const double k = 2.0 * a + 1.0;
  return 4.0 / kPi / k * std::exp(-kPi * kPi * k * k / (8.0 * x * x));
}

}  // namespace

void validate(const SeriesConfig& cfg) {
  if (!(cfg.eps > 0.0)) throw UsageError("eps must be positive");
  if (cfg.max_terms < 1) throw UsageError("max_terms must be at least 1");
}

int series_terms(double x, double eps, Diagnostics* diagnostics) {
  if (!(x > 0.0)) throw UsageError("series_terms requires x > 0");
  if (!(eps > 0.0 && eps < 1.0 / kPi)) {
    warn(diagnostics, "eps outside (0, 1/pi); using a single leading term");
    return 1;
  }
  const double radicand = std::log(1.0 / (kPi * eps)) - 0.5;
  if (radicand <= 0.0) {
    warn(diagnostics, "eps too large for the term-count rule; using a single leading term");
    return 1;
  }
  const double m = std::ceil(x * std::numbers::sqrt2 / kPi * std::sqrt(radicand));
  return std::max(1, static_cast<int>(std::min(m, 1e9)));
}

double sup_abs_bm_sf(double x, const SeriesConfig& cfg) {
  validate(cfg);
  if (!(x > 0.0)) throw UsageError("sup_abs_bm_sf requires x > 0");
  if (std::isinf(x)) return 0.0;
  const int m = std::min(series_terms(x, cfg.eps), cfg.max_terms);
  double sum = 0.0;
  int a = 0;
  for (; a < cfg.max_terms; ++a) {
    const double term = series_term(a, x);
    if (a >= m && term < cfg.eps) break;
    sum += (a % 2 == 0) ? term : -term;
  }
  return std::clamp(1.0 - sum, 0.0, 1.0);
}

double sup_abs_bm_quantile(double p, const SeriesConfig& cfg) {
  if (!(p > 0.0 && p < 1.0)) throw UsageError("quantile requires 0 < p < 1");
  double lo = 1e-3;
  double hi = 1.0;
  while (sup_abs_bm_sf(lo, cfg) < p) {
    lo /= 2.0;
    if (lo < 1e-12) throw NumericError("sup|M| quantile: lower bracket not found");
  }
  while (sup_abs_bm_sf(hi, cfg) > p) {
    hi *= 2.0;
    if (hi > 1e6) throw NumericError("sup|M| quantile: upper bracket not found");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double s = sup_abs_bm_sf(mid, cfg);
    if (std::abs(s - p) < 1e-12 || hi - lo < 1e-15 * hi) return mid;
    (s > p ? lo : hi) = mid;
  }
  const double mid = 0.5 * (lo + hi);
  if (std::abs(sup_abs_bm_sf(mid, cfg) - p) < 1e-9) return mid;
  throw NumericError("sup|M| quantile: bisection did not converge");
}

namespace {

// exp(2ux) * Phibar(u + x), evaluated as exp(2ux + log Phibar(u + x)).
double scaled_tail(double u, double x) {
  return std::exp(2.0 * u * x + log_normal_sf(u + x));
}

// exp(2ux) * phi(u + x); algebraically equal to phi(u - x).
double scaled_density(double u, double x) {
  const double z = u + x;
  return std::exp(2.0 * u * x - 0.5 * z * z) / std::sqrt(2.0 * kPi);
}

}  // namespace

double drift_crossing(double boundary, double drift) {
  const double y = normal_sf(boundary - drift) + scaled_tail(boundary, drift);
  return std::isnan(y) ? 0.0 : std::clamp(y, 0.0, 1.0);
}

double drift_crossing_derivative(double boundary, double drift) {
  const double u = boundary, x = drift;
  return normal_pdf(u - x) + 2.0 * u * scaled_tail(u, x) - scaled_density(u, x);
}

EtaSolution solve_eta(double critical, double target_power, double eta0) {
  if (!(critical > 0.0)) throw UsageError("critical value must be positive");
  if (!(target_power > 0.0 && target_power < 1.0)) throw UsageError("power must lie in (0, 1)");
  if (!std::isfinite(eta0)) throw UsageError("initial eta must be finite");

  auto residual = [&](double eta) { return drift_crossing(critical, eta) - target_power; };

  EtaSolution sol;
  double eta = eta0;
  double correction_sum = 0.0;
  for (int it = 1; it <= 100; ++it) {
    const double r = residual(eta);
    if (std::abs(r) < kResidualTol) {
      sol.eta = eta;
      sol.iterations = it - 1;
      return sol;
    }
    const double slope = drift_crossing_derivative(critical, eta);
    if (!(slope > 1e-300) || !std::isfinite(slope)) break;
    const double step = -r / slope;
    if (!std::isfinite(step) || std::abs(step) > 50.0) break;
    correction_sum += step;
    eta = eta0 + correction_sum;
    sol.iterations = it;
  }

  // Bracketing fallback; Y is increasing in eta for a positive boundary.
  sol.bisection = true;
  double lo = std::min(eta0, 0.0) - 1.0;
  double hi = std::max(eta0, 1.0);
  for (int k = 0; residual(lo) > 0.0; ++k) {
    if (k > 60) throw NumericError("eta solver: no lower bracket for the target power");
    lo = 2.0 * lo - 1.0;
  }
  for (int k = 0; residual(hi) < 0.0; ++k) {
    if (k > 60 || hi > 1e4) {
      std::ostringstream msg;
      msg << "eta solver: target power " << target_power << " is unreachable";
      throw NumericError(msg.str());
    }
    hi *= 2.0;
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = residual(mid);
    ++sol.iterations;
    if (std::abs(r) < kResidualTol) {
      sol.eta = mid;
      return sol;
    }
    (r < 0.0 ? lo : hi) = mid;
    if (hi - lo < 1e-15 * std::max(1.0, std::abs(hi))) break;
  }
  throw NumericError("eta solver: residual tolerance not reached (target power too close to 1)");
}

}  // namespace rmtl
