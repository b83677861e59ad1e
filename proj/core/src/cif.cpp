#include "rmtl/cif.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmtl {

namespace {

// Index of the last step with time <= t, or -1.
std::ptrdiff_t floor_index(const std::vector<double>& times, double t) {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  return static_cast<std::ptrdiff_t>(it - times.begin()) - 1;
}

int cause_count(const RiskRow& row, EventCode cause) {
  return cause == EventCode::Interest ? row.interest : row.competing;
}

void require_cause(EventCode cause) {
  if (cause == EventCode::Censored) {
    throw UsageError("cumulative incidence requires cause Interest or Competing");
  }
}

EventCode other_cause(EventCode cause) {
  return cause == EventCode::Interest ? EventCode::Competing : EventCode::Interest;
}

}  // namespace

double StepFunction::at(double t) const {
  const auto i = floor_index(times, t);
  return i < 0 ? value_before_first : values[static_cast<std::size_t>(i)];
}

double StepFunction::left_limit(double t) const {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  const auto i = static_cast<std::ptrdiff_t>(it - times.begin()) - 1;
  return i < 0 ? value_before_first : values[static_cast<std::size_t>(i)];
}

double StepFunction::variance_at(double t) const {
  const auto i = floor_index(times, t);
  return i < 0 ? 0.0 : variances[static_cast<std::size_t>(i)];
}

StepFunction km_overall(const RiskTable& table) {
  StepFunction km;
  km.value_before_first = 1.0;
  km.times.reserve(table.rows.size());
  km.values.reserve(table.rows.size());
  km.variances.reserve(table.rows.size());

  double surv = 1.0;
  double greenwood = 0.0;
  for (const auto& row : table.rows) {
    const double n = row.at_risk;
    const double d = row.events();
    surv *= 1.0 - d / n;
    if (row.at_risk > row.events()) greenwood += d / (n * (n - d));
    km.times.push_back(row.time);
    km.values.push_back(surv);
    km.variances.push_back(surv > 0.0 ? surv * surv * greenwood : 0.0);
  }
  return km;
}

StepFunction cif_estimate(const RiskTable& table, EventCode cause) {
  require_cause(cause);
  StepFunction cif;
  cif.value_before_first = 0.0;
  cif.times.reserve(table.rows.size());
  cif.values.reserve(table.rows.size());

  if (table.events(other_cause(cause)) == 0) {
    const auto km = km_overall(table);
    cif.times = km.times;
    for (double s : km.values) cif.values.push_back(1.0 - s);
  } else {
    double surv_prev = 1.0;
    double incidence = 0.0;
    for (const auto& row : table.rows) {
      const double n = row.at_risk;
      incidence += cause_count(row, cause) / n * surv_prev;
      surv_prev *= 1.0 - row.events() / n;
      cif.times.push_back(row.time);
      cif.values.push_back(incidence);
    }
  }
  cif.variances = cif_variance(table, cause);
  return cif;
}

std::vector<double> cif_variance(const RiskTable& table, EventCode cause) {
  require_cause(cause);
  std::vector<double> out;
  out.reserve(table.rows.size());

  // Expanding the square in the first term keeps the evaluation linear:
  //   sum a_i (F - F_i)^2 = F^2 sum a_i - 2 F sum a_i F_i + sum a_i F_i^2.
  double a_sum = 0.0, aF_sum = 0.0, aF2_sum = 0.0;
  double mid_sum = 0.0;
  double b_sum = 0.0, bF_sum = 0.0;
  double surv_prev = 1.0;
  double incidence = 0.0;
  for (const auto& row : table.rows) {
    const double n = row.at_risk;
    const double d = row.events();
    const double dj = cause_count(row, cause);

    incidence += dj / n * surv_prev;
    if (row.at_risk > row.events()) {
      const double a = d / (n * (n - d));
      a_sum += a;
      aF_sum += a * incidence;
      aF2_sum += a * incidence * incidence;
    }
    mid_sum += surv_prev * surv_prev * dj * (n - dj) / (n * n * n);
    const double b = surv_prev * dj / (n * n);
    b_sum += b;
    bF_sum += b * incidence;

    const double F = incidence;
    double v = F * F * a_sum - 2.0 * F * aF_sum + aF2_sum + mid_sum -
               2.0 * (F * b_sum - bF_sum);
    if (incidence == 0.0) v = 0.0;
    out.push_back(std::max(v, 0.0));
    surv_prev *= 1.0 - d / n;
  }
  return out;
}

}  // namespace rmtl
