#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmtl/design.hpp"
#include "rmtl/inference.hpp"
#include "rmtl/rmtl.hpp"
#include "rmtl/simulate.hpp"

namespace rmtl::cli {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct RunConfig {
  std::string input;
  double tau = kUnset;
  double alpha = 0.05;
  double rho = 0.5;
  double eps = 1e-10;
  std::uint64_t seed = 1;
  int reps = 1000;
  int workers = 1;
  double ratio = 1.0;
  double power = 0.8;
  std::string method = "both";
  std::string sweep;
  bool strict_tau = false;
  std::string format = "json";
  std::string reference;
  double delta = kUnset;
  double var1 = kUnset;
  double var2 = kUnset;
  int n1 = 0;
  int n2 = 0;
  double censoring = kUnset;
};

bool given(double v) { return !std::isnan(v); }

void validate(const RunConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  if (!(cfg.rho >= 0.0 && cfg.rho <= 1.0)) throw UsageError("--rho must lie in [0, 1]");
  if (!(cfg.eps > 0.0)) throw UsageError("--eps must be positive");
  if (cfg.reps < 1) throw UsageError("--reps must be at least 1");
  if (cfg.workers < 1) throw UsageError("--workers must be at least 1");
  if (!(cfg.ratio > 0.0)) throw UsageError("--ratio must be positive");
  if (!(cfg.power > 0.0 && cfg.power < 1.0)) throw UsageError("--power must lie in (0, 1)");
  if (given(cfg.tau) && !(cfg.tau > 0.0 && std::isfinite(cfg.tau))) {
    throw UsageError("--tau must be positive and finite");
  }
  if (cfg.format != "json" && cfg.format != "table") {
    throw UsageError("--format must be json or table");
  }
  if (cfg.method != "both") parse_method(cfg.method);
}

std::vector<Method> selected_methods(const RunConfig& cfg) {
  if (cfg.method == "both") return {Method::Diff, Method::SDiff};
  return {parse_method(cfg.method)};
}

std::optional<std::string> reference(const RunConfig& cfg) {
  if (cfg.reference.empty()) return std::nullopt;
  return cfg.reference;
}

SeriesConfig series(const RunConfig& cfg) {
  SeriesConfig s;
  s.eps = cfg.eps;
  return s;
}

json curve_json(const StepFunction& f) {
  json rows = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    rows.push_back({f.times[i], f.values[i], f.variances[i]});
  }
  return rows;
}

json interval_json(const Interval& iv) { return {iv.lower, iv.upper}; }

json warnings_json(const Diagnostics& diag) { return diag.warnings; }

// Resolves tau from the flag or the default rule; records which was used.
double resolve_tau(const RunConfig& cfg, const TwoGroupFit& fit, std::string& source) {
  if (given(cfg.tau)) {
    source = "user";
    return cfg.tau;
  }
  source = "default";
  return default_tau(fit);
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

std::string fmt_ci(const Interval& iv, int precision = 4) {
  return "(" + fmt(iv.lower, precision) + ", " + fmt(iv.upper, precision) + ")";
}

void print_warnings(std::ostream& out, const Diagnostics& diag) {
  for (const auto& w : diag.warnings) out << "warning: " << w << '\n';
}

// ---------------------------------------------------------------- estimate

int cmd_estimate(const RunConfig& cfg, std::ostream& out) {
  const auto sample = read_dataset(cfg.input, reference(cfg));
  const auto fit = fit_groups(sample);
  Diagnostics diag;
  const TauOptions opts{cfg.strict_tau, &diag};
  std::string tau_source;
  const double tau = resolve_tau(cfg, fit, tau_source);
  const auto diff = rmtl_difference(fit, tau, opts);

  std::vector<std::string> notes;
  json groups = json::array();
  std::array<double, 2> rmstc_values{};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& g = fit.groups[k];
    const auto& est = diff.groups[k];
    const auto competing = estimate_rmtl(g, tau, EventCode::Competing);
    const double surv = rmstc(g.km, tau);
    rmstc_values[k] = surv;
    if (g.table.events(EventCode::Competing) == 0) {
      notes.push_back("group '" + g.label +
                      "' has no competing events: the interest CIF equals 1 - KM "
                      "(single-cause reduction)");
    }
    json ci = est.n >= 2 ? interval_json(rmtl_ci(est, cfg.alpha)) : json(nullptr);
    groups.push_back({
        {"label", g.label},
        {"n", g.n()},
        {"events_interest", g.table.events(EventCode::Interest)},
        {"events_competing", g.table.events(EventCode::Competing)},
        {"censored", g.table.censored},
        {"last_observed", g.table.last_observed},
        {"rmtl", {{"value", est.value},
                  {"variance", est.variance},
                  {"se", std::sqrt(est.variance / est.n)},
                  {"ci", ci}}},
        {"rmtl_competing", {{"value", competing.value}, {"variance", competing.variance}}},
        {"rmstc", surv},
        {"decomposition", {{"rmtl_interest", est.value},
                           {"rmtl_competing", competing.value},
                           {"rmstc", surv},
                           {"sum", est.value + competing.value + surv},
                           {"tau", tau}}},
        {"cif_interest", curve_json(g.interest)},
        {"cif_competing", curve_json(g.competing)},
        {"km", curve_json(g.km)},
    });
  }
  const auto dci = difference_ci(diff, cfg.alpha);

  if (cfg.format == "table") {
    out << "tau = " << fmt(tau) << " (" << tau_source << "), alpha = " << cfg.alpha << "\n\n";
    out << std::left << std::setw(16) << "group" << std::right << std::setw(8) << "n"
        << std::setw(12) << "RMTL" << std::setw(24) << "CI" << std::setw(12) << "RMTL_comp"
        << std::setw(12) << "RMSTc" << '\n';
    for (const auto& g : groups) {
      const auto& ci = g["rmtl"]["ci"];
      const std::string ci_text =
          ci.is_null() ? "-" : fmt_ci({ci[0].get<double>(), ci[1].get<double>()});
      out << std::left << std::setw(16) << g["label"].get<std::string>() << std::right
          << std::setw(8) << g["n"].get<int>() << std::setw(12)
          << fmt(g["rmtl"]["value"].get<double>()) << std::setw(24) << ci_text << std::setw(12)
          << fmt(g["rmtl_competing"]["value"].get<double>()) << std::setw(12)
          << fmt(g["rmstc"].get<double>()) << '\n';
    }
    out << "\nRMTL difference (" << diff.labels[1] << " - " << diff.labels[0]
        << "): " << fmt(diff.delta) << ' ' << fmt_ci(dci) << ", se " << fmt(diff.se) << '\n';
    out << "RMSTc difference: " << fmt(rmstc_values[1] - rmstc_values[0]) << '\n';
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& g = fit.groups[k];
      out << "\nCIF (interest), group " << g.label << '\n';
      out << std::setw(12) << "time" << std::setw(12) << "cif" << std::setw(14) << "variance"
          << '\n';
      for (std::size_t i = 0; i < g.interest.size(); ++i) {
        out << std::setw(12) << fmt(g.interest.times[i]) << std::setw(12)
            << fmt(g.interest.values[i]) << std::setw(14) << fmt(g.interest.variances[i], 6)
            << '\n';
      }
    }
    for (const auto& n : notes) out << "note: " << n << '\n';
    print_warnings(out, diag);
    return kOk;
  }

  json doc = {
      {"schema_version", kSchemaVersion},
      {"command", "estimate"},
      {"tau", tau},
      {"tau_source", tau_source},
      {"alpha", cfg.alpha},
      {"groups", groups},
      {"difference", {{"reference", diff.labels[0]},
                      {"comparison", diff.labels[1]},
                      {"delta", diff.delta},
                      {"se", diff.se},
                      {"ci", interval_json(dci)}}},
      {"rmstc_difference", rmstc_values[1] - rmstc_values[0]},
      {"notes", notes},
      {"warnings", warnings_json(diag)},
  };
  out << doc.dump(2) << '\n';
  return kOk;
}

// -------------------------------------------------------------------- test

int cmd_test(const RunConfig& cfg, std::ostream& out) {
  const auto sample = read_dataset(cfg.input, reference(cfg));
  const auto fit = fit_groups(sample);
  Diagnostics diag;
  const TauOptions opts{cfg.strict_tau, &diag};
  std::string tau_source;
  const double tau = resolve_tau(cfg, fit, tau_source);

  std::vector<TestResult> results;
  for (Method m : selected_methods(cfg)) {
    results.push_back(m == Method::Diff
                          ? diff_test(fit, tau, cfg.alpha, opts)
                          : sdiff_test(fit, tau, cfg.alpha, cfg.rho, series(cfg), opts));
  }
  const auto& diff = results.front().delta;

  if (cfg.format == "table") {
    out << "tau = " << fmt(tau) << " (" << tau_source << "), alpha = " << cfg.alpha
        << ", rho = " << cfg.rho << '\n';
    out << "RMTL difference (" << diff.labels[1] << " - " << diff.labels[0]
        << "): " << fmt(diff.delta) << ", se " << fmt(diff.se) << "\n\n";
    out << std::left << std::setw(8) << "method" << std::right << std::setw(12) << "statistic"
        << std::setw(12) << "p-value" << std::setw(10) << "reject" << '\n';
    for (const auto& r : results) {
      out << std::left << std::setw(8) << to_string(r.method) << std::right << std::setw(12)
          << fmt(r.statistic) << std::setw(12) << fmt(r.p_value) << std::setw(10)
          << (r.reject ? "yes" : "no") << '\n';
    }
    print_warnings(out, diag);
    return kOk;
  }

  json rows = json::array();
  for (const auto& r : results) {
    json row = {{"method", std::string(to_string(r.method))},
                {"statistic", r.statistic},
                {"p_value", r.p_value},
                {"alpha", r.alpha},
                {"reject", r.reject},
                {"normalizer", r.normalizer}};
    if (r.method == Method::SDiff) row["rho"] = cfg.rho;
    rows.push_back(row);
  }
  json doc = {
      {"schema_version", kSchemaVersion},
      {"command", "test"},
      {"tau", tau},
      {"tau_source", tau_source},
      {"alpha", cfg.alpha},
      {"rho", cfg.rho},
      {"eps", cfg.eps},
      {"difference", {{"reference", diff.labels[0]},
                      {"comparison", diff.labels[1]},
                      {"delta", diff.delta},
                      {"se", diff.se},
                      {"ci", interval_json(difference_ci(diff, cfg.alpha))}}},
      {"results", rows},
      {"warnings", warnings_json(diag)},
  };
  out << doc.dump(2) << '\n';
  return kOk;
}

// -------------------------------------------------------------- samplesize

struct SweepRange {
  double start, stop, step;
};

SweepRange parse_sweep(const std::string& text) {
  std::array<double, 3> v{};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const auto next = i < 2 ? text.find(':', pos) : text.size();
    if (next == std::string::npos) throw UsageError("--sweep expects start:stop:step");
    const auto part = text.substr(pos, next - pos);
    try {
      std::size_t used = 0;
      v[i] = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("--sweep: cannot parse '" + part + "'");
    }
    pos = next + 1;
  }
  if (!(v[0] > 0.0) || !(v[1] >= v[0]) || !(v[2] > 0.0)) {
    throw UsageError("--sweep requires 0 < start <= stop and step > 0");
  }
  if ((v[1] - v[0]) / v[2] > 1e5) throw UsageError("--sweep has too many points");
  return {v[0], v[1], v[2]};
}

json size_json(const SampleSizeResult& r) {
  json j = {{"method", std::string(to_string(r.method))},
            {"raw_n", r.raw_n},
            {"n_total", r.n_total},
            {"n1", r.n1},
            {"n2", r.n2},
            {"degenerate", r.degenerate}};
  if (r.method == Method::SDiff) {
    j["xi"] = r.xi;
    j["eta"] = r.eta;
    j["eta_tilde"] = r.eta_tilde;
    j["critical_value"] = r.critical_value;
  } else {
    j["critical_value"] = r.critical_value;
  }
  return j;
}

int cmd_samplesize(const RunConfig& cfg, std::ostream& out) {
  const bool explicit_inputs = given(cfg.delta) || given(cfg.var1) || given(cfg.var2);
  if (explicit_inputs && !cfg.input.empty()) {
    throw UsageError("give either --input (pilot data) or --delta/--var1/--var2, not both");
  }
  if (!explicit_inputs && cfg.input.empty()) {
    throw UsageError("samplesize needs --input (pilot data) or --delta, --var1 and --var2");
  }
  if (explicit_inputs && !(given(cfg.delta) && given(cfg.var1) && given(cfg.var2))) {
    throw UsageError("explicit design inputs need all of --delta, --var1 and --var2");
  }
  if (!cfg.sweep.empty() && explicit_inputs) {
    throw UsageError("--sweep needs pilot data (--input)");
  }

  Diagnostics diag;
  const TauOptions opts{cfg.strict_tau, &diag};
  DesignInput in;
  in.ratio = cfg.ratio;
  in.alpha = cfg.alpha;
  in.power = cfg.power;
  std::optional<TwoGroupSample> pilot;
  if (explicit_inputs) {
    in.delta = cfg.delta;
    in.var1 = cfg.var1;
    in.var2 = cfg.var2;
    if (given(cfg.tau)) in.tau = cfg.tau;
  } else {
    pilot.emplace(read_dataset(cfg.input, reference(cfg)));
    const auto p = pilot_parameters(*pilot, given(cfg.tau) ? std::optional<double>(cfg.tau)
                                                           : std::nullopt,
                                    opts);
    in.delta = p.delta;
    in.var1 = p.var1;
    in.var2 = p.var2;
    in.tau = p.tau;
  }

  const auto methods = selected_methods(cfg);
  std::vector<SampleSizeResult> results;
  for (Method m : methods) {
    results.push_back(m == Method::Diff ? sample_size_diff(in) : sample_size_sdiff(in, series(cfg)));
  }

  json sweep = json::array();
  if (!cfg.sweep.empty()) {
    const auto range = parse_sweep(cfg.sweep);
    const auto count = static_cast<long>(std::floor((range.stop - range.start) / range.step + 1e-9));
    for (long i = 0; i <= count; ++i) {
      const double tau = range.start + static_cast<double>(i) * range.step;
      json point = {{"tau", tau}};
      try {
        const auto p = pilot_parameters(*pilot, tau, {false, nullptr});
        DesignInput at = in;
        at.delta = p.delta;
        at.var1 = p.var1;
        at.var2 = p.var2;
        at.tau = tau;
        point["delta"] = p.delta;
        point["var1"] = p.var1;
        point["var2"] = p.var2;
        for (Method m : methods) {
          const auto r = m == Method::Diff ? sample_size_diff(at) : sample_size_sdiff(at, series(cfg));
          point[m == Method::Diff ? "n_diff" : "n_sdiff"] = r.n_total;
        }
      } catch (const Error& e) {
        point["error"] = e.what();
      }
      sweep.push_back(point);
    }
  }

  if (cfg.format == "table") {
    out << "delta = " << fmt(in.delta, 6) << ", var1 = " << fmt(in.var1, 6)
        << ", var2 = " << fmt(in.var2, 6) << ", ratio = " << in.ratio << ", alpha = " << in.alpha
        << ", power = " << in.power;
    if (in.tau) out << ", tau = " << fmt(*in.tau);
    out << "\n\n";
    out << std::left << std::setw(8) << "method" << std::right << std::setw(10) << "n_total"
        << std::setw(8) << "n1" << std::setw(8) << "n2" << std::setw(12) << "raw_n"
        << std::setw(10) << "xi" << std::setw(10) << "eta" << std::setw(12) << "eta_tilde" << '\n';
    for (const auto& r : results) {
      out << std::left << std::setw(8) << to_string(r.method) << std::right << std::setw(10)
          << r.n_total << std::setw(8) << r.n1 << std::setw(8) << r.n2 << std::setw(12)
          << fmt(r.raw_n, 2) << std::setw(10) << fmt(r.xi) << std::setw(10) << fmt(r.eta)
          << std::setw(12) << fmt(r.eta_tilde) << '\n';
    }
    if (!sweep.empty()) {
      out << '\n' << std::setw(10) << "tau" << std::setw(10) << "n_diff" << std::setw(10)
          << "n_sdiff" << '\n';
      for (const auto& p : sweep) {
        out << std::setw(10) << fmt(p["tau"].get<double>());
        for (const char* key : {"n_diff", "n_sdiff"}) {
          out << std::setw(10) << (p.contains(key) ? std::to_string(p[key].get<int>()) : "-");
        }
        out << '\n';
      }
    }
    print_warnings(out, diag);
    return kOk;
  }

  json rows = json::array();
  for (const auto& r : results) rows.push_back(size_json(r));
  json doc = {
      {"schema_version", kSchemaVersion},
      {"command", "samplesize"},
      {"inputs", {{"source", explicit_inputs ? "explicit" : "pilot"},
                  {"delta", in.delta},
                  {"var1", in.var1},
                  {"var2", in.var2},
                  {"ratio", in.ratio},
                  {"alpha", in.alpha},
                  {"power", in.power},
                  {"tau", in.tau ? json(*in.tau) : json(nullptr)}}},
      {"results", rows},
      {"warnings", warnings_json(diag)},
  };
  if (!sweep.empty()) doc["sweep"] = sweep;
  out << doc.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  auto spec = load_scenario(cfg.input);
  if (given(cfg.censoring)) {
    spec.censoring = {};
    spec.censoring.target = cfg.censoring;
  }
  if (given(cfg.tau)) spec.tau = cfg.tau;

  SimulationOptions opts;
  opts.methods = selected_methods(cfg);
  opts.reps = cfg.reps;
  opts.seed = cfg.seed;
  opts.alpha = cfg.alpha;
  opts.rho = cfg.rho;
  opts.series = series(cfg);
  opts.workers = cfg.workers;
  if (cfg.n1 != 0 || cfg.n2 != 0) {
    if (cfg.n1 < 2 || cfg.n2 < 2) throw UsageError("--n1 and --n2 must both be at least 2");
    opts.group_sizes = std::array<int, 2>{cfg.n1, cfg.n2};
  }
  const auto report = run_monte_carlo(spec, opts);

  if (cfg.format == "table") {
    out << "scenario " << report.label << ", n = " << report.group_sizes[0] << "/"
        << report.group_sizes[1] << ", reps = " << report.reps << ", seed = " << report.seed
        << ", tau rule = " << report.tau_rule << '\n';
    out << "mean tau = " << fmt(report.mean_tau) << ", mean censoring rate = "
        << fmt(report.mean_censoring_rate) << ", degenerate = " << report.degenerate << "\n\n";
    out << std::left << std::setw(8) << "method" << std::right << std::setw(12) << "rejections"
        << std::setw(8) << "valid" << std::setw(10) << "rate" << std::setw(10) << "se" << '\n';
    for (const auto& r : report.rates) {
      out << std::left << std::setw(8) << to_string(r.method) << std::right << std::setw(12)
          << r.rejections << std::setw(8) << r.valid << std::setw(10) << fmt(r.rate)
          << std::setw(10) << fmt(r.se) << '\n';
    }
    for (const auto& w : report.warnings) out << "warning: " << w << '\n';
    return kOk;
  }

  json bounds = json::array();
  for (const auto& b : report.censoring_bounds) bounds.push_back(b ? json(*b) : json(nullptr));
  json rows = json::array();
  for (const auto& r : report.rates) {
    rows.push_back({{"method", std::string(to_string(r.method))},
                    {"rejections", r.rejections},
                    {"valid", r.valid},
                    {"rate", r.rate},
                    {"se", r.se}});
  }
  json doc = {
      {"schema_version", kSchemaVersion},
      {"command", "simulate"},
      {"scenario", json::parse(scenario_to_json(spec))},
      {"seed", report.seed},
      {"reps", report.reps},
      {"alpha", cfg.alpha},
      {"rho", cfg.rho},
      {"eps", cfg.eps},
      {"group_sizes", report.group_sizes},
      {"tau_rule", report.tau_rule},
      {"censoring_bounds", bounds},
      {"mean_tau", report.mean_tau},
      {"mean_censoring_rate", report.mean_censoring_rate},
      {"degenerate_reps", report.degenerate},
      {"results", rows},
      {"warnings", report.warnings},
  };
  out << doc.dump(2) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Restricted mean time lost under competing risks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "Two-sided significance level")->capture_default_str();
    sub->add_option("--tau", cfg.tau, "Truncation time (default: min last event-of-interest time)");
    sub->add_option("--format", cfg.format, "Output format: json or table")->capture_default_str();
  };
  auto add_data = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--input", cfg.input, "Dataset (time,status,group)");
    if (required) opt->required();
    sub->add_flag("--strict-tau", cfg.strict_tau, "Error when tau exceeds a group's follow-up");
    sub->add_option("--reference", cfg.reference, "Label of group 1 (differences are 2 minus 1)");
  };

  auto* estimate = app.add_subcommand("estimate", "CIF, RMTL and RMSTc per group");
  add_common(estimate);
  add_data(estimate, true);

  auto* test = app.add_subcommand("test", "Diff and sDiff tests of the RMTL difference");
  add_common(test);
  add_data(test, true);
  test->add_option("--rho", cfg.rho, "Correlation used in sigma(tau)")->capture_default_str();
  test->add_option("--eps", cfg.eps, "Permissible series error")->capture_default_str();
  test->add_option("--method", cfg.method, "Diff, sDiff or both")->capture_default_str();

  auto* samplesize = app.add_subcommand("samplesize", "Sample size for Diff and sDiff");
  add_common(samplesize);
  add_data(samplesize, false);
  samplesize->add_option("--delta", cfg.delta, "Assumed RMTL difference");
  samplesize->add_option("--var1", cfg.var1, "Per-subject variance, group 1");
  samplesize->add_option("--var2", cfg.var2, "Per-subject variance, group 2");
  samplesize->add_option("--ratio", cfg.ratio, "Allocation ratio n2/n1")->capture_default_str();
  samplesize->add_option("--power", cfg.power, "Target power")->capture_default_str();
  samplesize->add_option("--eps", cfg.eps, "Permissible series error")->capture_default_str();
  samplesize->add_option("--method", cfg.method, "Diff, sDiff or both")->capture_default_str();
  samplesize->add_option("--sweep", cfg.sweep, "tau sweep start:stop:step (pilot data only)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo size and power study");
  add_common(simulate);
  simulate->add_option("--input", cfg.input, "Scenario file (JSON)")->required();
  simulate->add_option("--rho", cfg.rho, "Correlation used in sigma(tau)")->capture_default_str();
  simulate->add_option("--eps", cfg.eps, "Permissible series error")->capture_default_str();
  simulate->add_option("--method", cfg.method, "Diff, sDiff or both")->capture_default_str();
  simulate->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  simulate->add_option("--reps", cfg.reps, "Replications")->capture_default_str();
  simulate->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
  simulate->add_option("--n1", cfg.n1, "Override group 1 size");
  simulate->add_option("--n2", cfg.n2, "Override group 2 size");
  simulate->add_option("--censoring", cfg.censoring, "Override the target censoring rate");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    validate(cfg);
    if (estimate->parsed()) return cmd_estimate(cfg, out);
    if (test->parsed()) return cmd_test(cfg, out);
    if (samplesize->parsed()) return cmd_samplesize(cfg, out);
    if (simulate->parsed()) return cmd_simulate(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case Error::Kind::Usage: return kUsage;
      case Error::Kind::Data: return kData;
      case Error::Kind::Numeric: return kNumeric;
    }
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace rmtl::cli
