#include "rmtl/normal.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numbers>

#include "rmtl/common.hpp"

namespace rmtl {

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double log_normal_sf(double z) {
  if (z < 30.0) return std::log(normal_sf(z));
  // Mills ratio by backward evaluation of its continued fraction.
  double frac = z;
  for (int k = 60; k >= 1; --k) frac = z + k / frac;
  return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi) - std::log(frac);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw UsageError("normal quantile requires 0 < p < 1");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

}  // namespace rmtl
