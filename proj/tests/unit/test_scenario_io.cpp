#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rmtl/simulate.hpp"

using namespace rmtl;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const DataError& e) {
    return e.what();
  }
  return {};
}

const char* kMinimal = R"({
  "label": "T", "n": [20, 30],
  "groups": [
    {"name": "a", "interest": {"p": 0.6, "segments": [{"start": 0, "shape": 1, "scale": 1}]},
                  "competing": {"p": 0.4, "segments": [{"start": 0, "shape": 2, "scale": 2}]}},
    {"name": "b", "interest": {"p": 0.5, "segments": [{"start": 0, "shape": 1, "scale": 1},
                                                       {"start": 1, "shape": 2, "scale": 1.5}]},
                  "competing": {"p": 0.5, "segments": [{"start": 0, "shape": 2, "scale": 2}]}}],
  "censoring": {"c": [3, 4]}
})";

}  // namespace

TEST(ScenarioIo, ParsesMinimal) {
  const auto spec = parse_scenario(kMinimal);
  EXPECT_EQ(spec.label, "T");
  EXPECT_EQ(spec.groups[0].n, 20);
  EXPECT_EQ(spec.groups[1].n, 30);
  EXPECT_EQ(spec.groups[1].interest.segments().size(), 2u);
  ASSERT_TRUE(spec.censoring.bound.has_value());
  EXPECT_EQ((*spec.censoring.bound)[1], 4.0);
  EXPECT_FALSE(spec.tau.has_value());
}

TEST(ScenarioIo, RoundTrip) {
  const auto spec = parse_scenario(kMinimal);
  const auto again = parse_scenario(scenario_to_json(spec));
  EXPECT_EQ(scenario_to_json(again), scenario_to_json(spec));
}

TEST(ScenarioIo, ErrorsNameTheField) {
  std::string text = kMinimal;
  const auto drop = [&](const std::string& from, const std::string& to) {
    auto t = text;
    t.replace(t.find(from), from.size(), to);
    return error_of(t);
  };
  EXPECT_NE(drop("\"p\": 0.5,", "").find("groups[1].interest.p"), std::string::npos);
  EXPECT_NE(drop("\"shape\": 2, \"scale\": 1.5", "\"shape\": 2").find("segments[1].scale"),
            std::string::npos);
  EXPECT_NE(drop("\"n\": [20, 30],", "").find("n"), std::string::npos);
  EXPECT_NE(drop("\"n\": [20, 30]", "\"n\": 2.5").find("n"), std::string::npos);
  EXPECT_NE(drop("\"p\": 0.6", "\"p\": 0.7").find("groups[0]"), std::string::npos);
  EXPECT_NE(drop("\"c\": [3, 4]", "\"target\": 0.95").find("censoring"), std::string::npos);
  EXPECT_NE(drop("\"start\": 1,", "\"start\": 0,").find("groups[1].interest"), std::string::npos);
  EXPECT_NE(drop("\"name\": \"a\"", "\"name\": 3").find("groups[0].name"), std::string::npos);
  EXPECT_NE(error_of("{not json").find("invalid JSON"), std::string::npos);
  EXPECT_NE(error_of("[1, 2]").find("expected an object"), std::string::npos);
}

TEST(ScenarioIo, ShippedScenariosLoad) {
  for (const char* f : {"A_null.json", "B_proportional.json", "C_nonproportional.json",
                        "D_early.json", "E_late.json", "F_crossing.json", "B_design.json"}) {
    EXPECT_NO_THROW(load_scenario(oracle::scenario_path(f))) << f;
  }
  EXPECT_THROW(load_scenario("/nonexistent.json"), DataError);
}
