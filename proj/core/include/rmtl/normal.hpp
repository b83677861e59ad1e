#pragma once

namespace rmtl {

double normal_pdf(double z);
double normal_cdf(double z);
/// Upper tail 1 - Phi(z).
double normal_sf(double z);
/// log(1 - Phi(z)), accurate far into the upper tail.
double log_normal_sf(double z);
/// Phi^{-1}(p) for 0 < p < 1.
double normal_quantile(double p);

}  // namespace rmtl
