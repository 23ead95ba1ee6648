#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jwcontext/io.hpp"
#include "jwcontext/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace jwcontext;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(fmt_sig9(2.0 * std::sqrt(2.0)) == "2.82842712");
  CHECK(fmt_sig9(2.0) == "2");
  const double value = 0.123456789123456789;
  CHECK(std::stod(fmt_full(value)) == value);  // round trips exactly
}

TEST_CASE("pure state files round trip") {
  Rng rng(3);
  const FermionState original = random_physical_state(rng, 3);
  const std::string path = temp_path("jwctx_state.json");
  save_state_file(path, original);
  const LoadedState loaded = load_state_file(path);
  REQUIRE(std::holds_alternative<FermionState>(loaded));
  const FermionState& state = std::get<FermionState>(loaded);
  CHECK(state.mode_count() == 3);
  double worst = 0.0;
  for (const auto& [p, a] : original.amplitudes())
    worst = std::max(worst, std::abs(state.amplitude(p) - a));
  CHECK(worst < 1e-12);
  std::remove(path.c_str());
}

TEST_CASE("state files follow the documented schema") {
  const std::string text = R"({
    "mode_count": 2,
    "amplitudes": [
      {"pattern": "10", "re": 0.7071067811865476, "im": 0.0},
      {"pattern": "01", "re": 0.0, "im": 0.7071067811865476}
    ],
    "label": "demo"
  })";
  const LoadedState loaded = state_from_json_text(text);
  REQUIRE(std::holds_alternative<FermionState>(loaded));
  const FermionState& s = std::get<FermionState>(loaded);
  CHECK(s.label() == "demo");
  CHECK(std::abs(s.amplitude(pattern_from_string("10")).real() - 0.7071067811865476) <
        1e-15);
  CHECK(std::abs(s.amplitude(pattern_from_string("01")).imag() - 0.7071067811865476) <
        1e-15);
}

TEST_CASE("mixture files") {
  const std::string text = R"({
    "weights": [0.5, 0.5],
    "states": [
      {"mode_count": 2, "amplitudes": [{"pattern": "10", "re": 1.0, "im": 0.0}]},
      {"mode_count": 2, "amplitudes": [{"pattern": "01", "re": 1.0, "im": 0.0}]}
    ]
  })";
  const LoadedState loaded = state_from_json_text(text);
  REQUIRE(std::holds_alternative<DensityState>(loaded));
  const DensityState& rho = std::get<DensityState>(loaded);
  CHECK(rho.mode_count() == 2);
  CHECK(rho.is_mixture());
  CHECK(mixture_to_json_text(rho).find("weights") != std::string::npos);
}

TEST_CASE("malformed state files raise domain errors") {
  CHECK_THROWS_AS(state_from_json_text("not json"), DomainError);
  CHECK_THROWS_AS(state_from_json_text(R"({"amplitudes": []})"), DomainError);
  CHECK_THROWS_AS(
      state_from_json_text(
          R"({"mode_count": 2, "amplitudes": [{"pattern": "101", "re": 1.0}]})"),
      DomainError);
  // non-normalized amplitudes are an error, never rescaled
  CHECK_THROWS_AS(
      state_from_json_text(
          R"({"mode_count": 2, "amplitudes": [{"pattern": "10", "re": 0.5}]})"),
      NormalizationError);
  CHECK_THROWS_AS(load_state_file("/nonexistent/path.json"), DomainError);
}

TEST_CASE("report rendering") {
  InequalityReport rep;
  rep.name = "chsh";
  rep.quantum_value = 2.0 * std::sqrt(2.0);
  rep.nc_bound = 2.0;
  rep.margin = rep.quantum_value - rep.nc_bound;
  rep.settings = chsh_labeled_settings(chsh_analytic_optimum(1 / std::sqrt(2.0),
                                                             1 / std::sqrt(2.0))
                                           .settings);
  rep.state_label = "g=(0.707,0.707)";

  SUBCASE("table uses 9 significant digits") {
    const std::string table = render_report(rep, OutputFormat::Table);
    CHECK(table.find("2.82842712") != std::string::npos);
    CHECK(table.find("violated       yes") != std::string::npos);
    CHECK(table.find("k1'") != std::string::npos);
    CHECK(table.find("deg") != std::string::npos);
  }
  SUBCASE("json carries structured settings") {
    const std::string json = render_report(rep, OutputFormat::Json);
    CHECK(json.find("\"theta_rad\"") != std::string::npos);
    CHECK(json.find("\"theta_deg\"") != std::string::npos);
    CHECK(json.find("\"margin\"") != std::string::npos);
  }
  SUBCASE("csv has a header and one row") {
    const std::string csv = render_report(rep, OutputFormat::Csv);
    CHECK(csv.find("name,quantum_value") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  }
}

TEST_CASE("settings text carries radians and degrees") {
  const std::vector<LabeledDirection> settings{
      {"k1", Direction{std::numbers::pi, 0.0}}};
  const std::string text = format_settings_text(settings);
  CHECK(text.find("k1:") != std::string::npos);
  CHECK(text.find("3.14159265 rad") != std::string::npos);
  CHECK(text.find("180 deg") != std::string::npos);
}

TEST_CASE("verify rendering marks failures") {
  std::vector<CheckResult> rows{{"demo/pass", 1e-13, 1e-12, true},
                                {"demo/fail", 1e-3, 1e-12, false}};
  const std::string table = render_verify(rows, OutputFormat::Table);
  CHECK(table.find("pass") != std::string::npos);
  CHECK(table.find("FAIL") != std::string::npos);
  const std::string csv = render_verify(rows, OutputFormat::Csv);
  CHECK(csv.find("demo/fail") != std::string::npos);
}

TEST_CASE("format parsing") {
  CHECK(parse_output_format("table") == OutputFormat::Table);
  CHECK(parse_output_format("json") == OutputFormat::Json);
  CHECK(parse_output_format("csv") == OutputFormat::Csv);
  CHECK_THROWS_AS(parse_output_format("xml"), DomainError);
}

TEST_CASE("chsh scan rendering is monotone in the amplitude product") {
  std::vector<ChshScanRow> rows;
  for (int i = 0; i <= 10; ++i) {
    const double g1sq = i * 0.1;
    const double g1 = std::sqrt(g1sq), g2 = std::sqrt(1.0 - g1sq);
    const ChshOptimum opt = chsh_analytic_optimum(g1, g2);
    rows.push_back({g1sq, opt.value, opt.value, opt.settings});
  }
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double pa = rows[i].g1_squared * (1.0 - rows[i].g1_squared);
    const double pb = rows[i + 1].g1_squared * (1.0 - rows[i + 1].g1_squared);
    if (pa < pb) CHECK(rows[i].analytic_value <= rows[i + 1].analytic_value + 1e-12);
    if (pa > pb) CHECK(rows[i].analytic_value >= rows[i + 1].analytic_value - 1e-12);
  }
  const std::string csv = render_chsh_scan(rows, OutputFormat::Csv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);  // header + 11 rows
}
