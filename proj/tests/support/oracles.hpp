#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rmtl/cif.hpp"
#include "rmtl/data.hpp"
#include "rmtl/simulate.hpp"

namespace rmtl::oracle {

// Brute-force Aalen-Johansen and Kaplan-Meier estimates, recounting the risk
// set from the raw records at every distinct event time.
struct NaiveCurves {
  std::vector<double> times;
  std::vector<double> survival;
  std::vector<double> interest;
  std::vector<double> competing;
};
NaiveCurves naive_curves(const std::vector<SubjectRecord>& records);

double naive_at(const std::vector<double>& times, const std::vector<double>& values, double t);

// Integral of f over [0, tau] by Gauss-Kronrod quadrature of f.at() on each
// piece between consecutive jump times.
double quadrature_area(const StepFunction& f, double tau);
double quadrature_first_moment(const StepFunction& f, double tau);

// Random Brownian paths on [0, 1] with `steps` increments.
struct PathStudy {
  std::vector<double> sup_abs;    // max |W(t)| per path
  std::vector<double> sup_drift;  // max (W(t) + drift t) per path
};
PathStudy simulate_paths(std::size_t paths, std::size_t steps, double drift, std::uint64_t seed);
double exceed_fraction(const std::vector<double>& sups, double x);

// Random two-group datasets with ties and all three event codes.
std::vector<SubjectRecord> random_records(std::mt19937_64& rng, int n_per_group,
                                          bool competing = true, bool ties = true);

std::string scenario_path(const std::string& file);

}  // namespace rmtl::oracle
