#include "rmtl/piecewise_weibull.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "rmtl/common.hpp"

namespace rmtl {

PiecewiseWeibullCif::PiecewiseWeibullCif(double mass, std::vector<WeibullSegment> segments)
    : mass_(mass), segments_(std::move(segments)) {
  if (!(mass_ > 0.0 && mass_ <= 1.0)) throw UsageError("CIF mass must lie in (0, 1]");
  if (segments_.empty()) throw UsageError("piecewise Weibull needs at least one segment");
  if (segments_.front().start != 0.0) throw UsageError("first Weibull segment must start at 0");
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const auto& s = segments_[k];
    if (!(s.shape > 0.0) || !(s.scale > 0.0) || !std::isfinite(s.shape) ||
        !std::isfinite(s.scale)) {
      throw UsageError("segment " + std::to_string(k) + ": shape and scale must be positive");
    }
    if (k > 0 && !(s.start > segments_[k - 1].start)) {
      throw UsageError("segment " + std::to_string(k) + ": breakpoints must be strictly ascending");
    }
  }
  hazard_at_start_.assign(segments_.size(), 0.0);
  for (std::size_t k = 1; k < segments_.size(); ++k) {
    const auto& prev = segments_[k - 1];
    const double end = segments_[k].start;
    hazard_at_start_[k] = hazard_at_start_[k - 1] + std::pow(end / prev.scale, prev.shape) -
                          std::pow(prev.start / prev.scale, prev.shape);
  }
}

double PiecewiseWeibullCif::cumulative_hazard(double t) const {
  if (t <= 0.0) return 0.0;
  const auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                                   [](double v, const WeibullSegment& s) { return v < s.start; });
  const auto k = static_cast<std::size_t>(it - segments_.begin()) - 1;
  const auto& s = segments_[k];
  return hazard_at_start_[k] + std::pow(t / s.scale, s.shape) - std::pow(s.start / s.scale, s.shape);
}

double PiecewiseWeibullCif::cdf(double t) const { return -std::expm1(-cumulative_hazard(t)); }

double PiecewiseWeibullCif::incidence(double t) const { return mass_ * cdf(t); }

double PiecewiseWeibullCif::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0)) throw UsageError("quantile requires u in [0, 1)");
  const double h = -std::log1p(-u);
  const auto it = std::upper_bound(hazard_at_start_.begin(), hazard_at_start_.end(), h);
  const auto k = static_cast<std::size_t>(it - hazard_at_start_.begin()) - 1;
  const auto& s = segments_[k];
  const double base = h - hazard_at_start_[k] + std::pow(s.start / s.scale, s.shape);
  const double t = s.scale * std::pow(base, 1.0 / s.shape);
  // Guard the piece boundary against rounding.
  const double lo = s.start;
  const double hi = k + 1 < segments_.size() ? segments_[k + 1].start : INFINITY;
  return std::clamp(t, lo, hi);
}

namespace {

template <class F>
double integrate_pieces(const std::vector<WeibullSegment>& segs, double tau, F f) {
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const double a = segs[k].start;
    if (a >= tau) break;
    const double b = k + 1 < segs.size() ? std::min(segs[k + 1].start, tau) : tau;
    total += gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13);
  }
  return total;
}

}  // namespace

double PiecewiseWeibullCif::restricted_area(double tau) const {
  if (!(tau > 0.0)) throw UsageError("tau must be positive");
  return integrate_pieces(segments_, tau, [this](double t) { return incidence(t); });
}

double PiecewiseWeibullCif::restricted_first_moment(double tau) const {
  if (!(tau > 0.0)) throw UsageError("tau must be positive");
  return integrate_pieces(segments_, tau, [this](double t) { return t * incidence(t); });
}

}  // namespace rmtl
