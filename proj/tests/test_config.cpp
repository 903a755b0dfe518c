#include "gmra/catalog.hpp"
#include "gmra/config.hpp"
#include "gmra/report.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <filesystem>

using namespace gmra;

namespace {
Rational q(long long p, long long r = 1) { return Rational(p, r); }

json minimal() {
  return json::parse(R"({
    "name": "box",
    "dilation": [[2]],
    "multiplicity": {"constant": 1},
    "lowpass": [[{"type": "piecewise", "pieces": [
        {"lo": "-1/8", "hi": "1/8", "re": "sqrt2"},
        {"lo": "1/4", "hi": "3/8", "re": "sqrt2", "pm": true}]}]],
    "highpass": [[{"type": "piecewise", "pieces": [
        {"lo": "1/8", "hi": "1/4", "re": "sqrt2", "pm": true},
        {"lo": "3/8", "hi": "1/2", "re": "sqrt2", "pm": true}]}]]
  })");
}
}  // namespace

TEST_CASE("value tokens") {
  CHECK(parse_value_token(json("sqrt2"), "t") == Value::sqrt(2));
  CHECK(parse_value_token(json("-1/2"), "t") == Value::rational(q(-1, 2)));
  CHECK(parse_value_token(json("3/4*sqrt2"), "t") == Value::rational(q(3, 4)) * Value::sqrt(2));
  CHECK(parse_value_token(json(0.25), "t").num() == std::complex<double>(0.25, 0.0));
  CHECK(error_code([] { parse_value_token(json("3/4*cbrt2"), "t"); }) == ErrorCode::ParseError);
  for (const Value& v : {Value::sqrt(2), Value::rational(q(-3, 7)), Value::rational(q(1, 3)) * Value::sqrt(5)})
    CHECK(parse_value_token(json(value_token(v)), "t") == v);
  CHECK(error_code([] { parse_rational_field(json(0.5), "lo"); }) == ErrorCode::ConfigError);
}

TEST_CASE("a minimal config builds the dyadic box") {
  SystemPtr sys = build_system(parse_system_config(minimal()));
  auto ref = dyadic_box_system();
  for (const auto& w : rational_grid(1, 64)) {
    CHECK(sys->H_values(w)[0][0] == ref->H_values(w)[0][0]);
    CHECK(sys->G_values(w)[0][0] == ref->G_values(w)[0][0]);
  }
}

TEST_CASE("malformed configs") {
  json j = minimal();
  j["colour"] = "red";
  CHECK(error_code([&] { parse_system_config(j); }) == ErrorCode::ConfigError);
  j = minimal();
  j["lowpass"][0][0]["pieces"][0]["hi"] = 0.125;
  CHECK(error_code([&] { build_system(parse_system_config(j)); }) == ErrorCode::ConfigError);
  j = minimal();
  j["lowpass"][0][0]["pieces"][0]["hi"] = "3/10";
  CHECK(error_code([&] { build_system(parse_system_config(j)); }) == ErrorCode::OverlappingPieces);
  j = minimal();
  j["lowpass"][0][0]["type"] = "spline";
  CHECK(error_code([&] { build_system(parse_system_config(j)); }) == ErrorCode::ConfigError);
  j = minimal();
  j["lowpass"][0][0]["pieces"][0]["re"] = "1";
  CHECK(error_code([&] { build_system(parse_system_config(j)); }) == ErrorCode::LowPassViolation);
  CHECK(error_code([] { load_system_config("/nonexistent/system.json"); }) == ErrorCode::IoError);
}

TEST_CASE("serialized systems read back identically") {
  auto grid = rational_grid(1, 7 * 16);
  for (const auto& sys : {dyadic_box_system(), journe_canonical_system(), journe_smooth_system()}) {
    json j = system_to_json(*sys);
    SystemPtr back = build_system(parse_system_config(j));
    CHECK(system_to_json(*back) == j);
    for (const auto& w : grid) {
      auto a = sys->H_values(w), b = back->H_values(w);
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < a[i].size(); ++k) CHECK(std::abs(a[i][k].num() - b[i][k].num()) < 1e-15);
    }
  }
}

TEST_CASE("loop configs") {
  LoopElement L = parse_loop_config(journe_loop_config());
  LoopElement ref = journe_loop_element();
  std::vector<TorusPoint> pts;
  for (int k = -20; k < 20; ++k) pts.push_back(TorusPoint{Rational(2 * k + 1, 83)});
  CHECK(loop_distance(L, ref, pts) == 0.0);
  CHECK(error_code([] { parse_loop_config(json{{"type", "other"}}); }) == ErrorCode::ConfigError);
}

TEST_CASE("shipped configs match the built-in catalog") {
  const std::filesystem::path dir = std::filesystem::path(GMRA_SOURCE_DIR) / "configs";
  for (const auto& [file, j] : example_configs()) {
    CAPTURE(file);
    REQUIRE(std::filesystem::exists(dir / file));
    CHECK(read_json_file(dir / file) == j);
  }
}

TEST_CASE("reports") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  Report r("validate", json{{"name", "x"}});
  r.check("eq", 1e-13, 1e-12);
  CHECK(r.ok());
  r.check("eq2", 1e-3, 1e-12, "x=1/4");
  CHECK_FALSE(r.ok());
  json out = r.to_json(false);
  CHECK(out["version"] == kVersion);
  CHECK(out["checks"].size() == 2);
  CHECK(r.config_hash() == Report("other", json{{"name", "x"}}).config_hash());
}
