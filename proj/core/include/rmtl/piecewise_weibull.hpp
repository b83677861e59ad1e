#pragma once

#include <vector>

namespace rmtl {

/// Weibull piece active from `start` until the next piece begins.
struct WeibullSegment {
  double start = 0.0;
  double shape = 1.0;
  double scale = 1.0;
};

/// Sub-distribution I(t) = mass * F(t), where F is a piecewise-Weibull
/// distribution built from its cumulative hazard: on the piece starting at
/// s_k,
///   H(t) = H(s_k) + (t / b_k)^{a_k} - (s_k / b_k)^{a_k},
/// so F = 1 - exp(-H) is continuous, strictly increasing, F(0) = 0 and
/// F(inf) = 1.  The first piece must start at 0.
class PiecewiseWeibullCif {
public:
  PiecewiseWeibullCif() = default;
  PiecewiseWeibullCif(double mass, std::vector<WeibullSegment> segments);

  double mass() const noexcept { return mass_; }
  const std::vector<WeibullSegment>& segments() const noexcept { return segments_; }

  double cumulative_hazard(double t) const;
  /// Conditional distribution F(t).
  double cdf(double t) const;
  /// I(t) = mass * F(t).
  double incidence(double t) const;
  /// F^{-1}(u) for u in [0, 1).
  double quantile(double u) const;

  /// int_0^tau I(t) dt by Gauss-Kronrod quadrature on each piece.
  double restricted_area(double tau) const;
  /// int_0^tau t I(t) dt.
  double restricted_first_moment(double tau) const;

private:
  double mass_ = 1.0;
  std::vector<WeibullSegment> segments_{WeibullSegment{}};
  std::vector<double> hazard_at_start_{0.0};
};

}  // namespace rmtl
