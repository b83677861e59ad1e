#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rmtl/simulate.hpp"

namespace rmtl {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw DataError("scenario: " + path + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "." + key, "missing");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema_error(path, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_error(path, "expected an integer");
  return v.get<int>();
}

PiecewiseWeibullCif parse_cif(const json& v, const std::string& path) {
  const double p = number(require(v, "p", path), path + ".p");
  const auto& segs = require(v, "segments", path);
  if (!segs.is_array() || segs.empty()) schema_error(path + ".segments", "expected a non-empty array");
  std::vector<WeibullSegment> out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string sp = path + ".segments[" + std::to_string(i) + "]";
    WeibullSegment s;
    s.start = number(require(segs[i], "start", sp), sp + ".start");
    s.shape = number(require(segs[i], "shape", sp), sp + ".shape");
    s.scale = number(require(segs[i], "scale", sp), sp + ".scale");
    out.push_back(s);
  }
  try {
    return PiecewiseWeibullCif(p, std::move(out));
  } catch (const UsageError& e) {
    schema_error(path, e.what());
  }
}

json cif_json(const PiecewiseWeibullCif& cif) {
  json segs = json::array();
  for (const auto& s : cif.segments()) {
    segs.push_back({{"start", s.start}, {"shape", s.shape}, {"scale", s.scale}});
  }
  return {{"p", cif.mass()}, {"segments", segs}};
}

}  // namespace

ScenarioSpec parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("scenario: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("$", "expected an object");

  ScenarioSpec spec;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) schema_error("label", "expected a string");
    spec.label = doc["label"].get<std::string>();
  }
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) schema_error("description", "expected a string");
    spec.description = doc["description"].get<std::string>();
  }

  const auto& groups = require(doc, "groups", "$");
  if (!groups.is_array() || groups.size() != 2) schema_error("groups", "expected exactly two groups");

  std::array<int, 2> n{};
  const auto& nv = require(doc, "n", "$");
  if (nv.is_array()) {
    if (nv.size() != 2) schema_error("n", "expected an integer or two integers");
    n = {integer(nv[0], "n[0]"), integer(nv[1], "n[1]")};
  } else {
    n[0] = n[1] = integer(nv, "n");
  }

  for (std::size_t k = 0; k < 2; ++k) {
    const std::string gp = "groups[" + std::to_string(k) + "]";
    const auto& g = groups[k];
    if (!g.is_object()) schema_error(gp, "expected an object");
    auto& out = spec.groups[k];
    out.name = std::to_string(k + 1);
    if (g.contains("name")) {
      if (!g["name"].is_string()) schema_error(gp + ".name", "expected a string");
      out.name = g["name"].get<std::string>();
    }
    out.interest = parse_cif(require(g, "interest", gp), gp + ".interest");
    out.competing = parse_cif(require(g, "competing", gp), gp + ".competing");
    out.n = n[k];
  }
  if (spec.groups[0].name == spec.groups[1].name) schema_error("groups", "group names must differ");

  if (doc.contains("censoring")) {
    const auto& c = doc["censoring"];
    if (!c.is_object()) schema_error("censoring", "expected an object");
    if (c.contains("target")) spec.censoring.target = number(c["target"], "censoring.target");
    if (c.contains("c")) {
      const auto& cv = c["c"];
      if (cv.is_array()) {
        if (cv.size() != 2) schema_error("censoring.c", "expected a number or two numbers");
        spec.censoring.bound = std::array<double, 2>{number(cv[0], "censoring.c[0]"),
                                                     number(cv[1], "censoring.c[1]")};
      } else {
        const double b = number(cv, "censoring.c");
        spec.censoring.bound = std::array<double, 2>{b, b};
      }
    }
  }
  if (doc.contains("tau")) spec.tau = number(doc["tau"], "tau");

  try {
    validate(spec);
  } catch (const UsageError& e) {
    throw DataError(std::string("scenario: ") + e.what());
  }
  return spec;
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open scenario '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const ScenarioSpec& spec) {
  json groups = json::array();
  for (const auto& g : spec.groups) {
    groups.push_back(
        {{"name", g.name}, {"interest", cif_json(g.interest)}, {"competing", cif_json(g.competing)}});
  }
  json doc = {{"label", spec.label},
              {"description", spec.description},
              {"n", {spec.groups[0].n, spec.groups[1].n}},
              {"groups", groups}};
  json cens = json::object();
  if (spec.censoring.target) cens["target"] = *spec.censoring.target;
  if (spec.censoring.bound) cens["c"] = {(*spec.censoring.bound)[0], (*spec.censoring.bound)[1]};
  doc["censoring"] = cens;
  if (spec.tau) doc["tau"] = *spec.tau;
  return doc.dump();
}

}  // namespace rmtl
