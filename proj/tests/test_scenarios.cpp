#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include <weakval/errors.hpp>
#include <weakval/extraction.hpp>
#include <weakval/scenario.hpp>

#include "test_support.hpp"

using namespace weakval;
using wvtest::check_close;

namespace {

Complex extract_optical(const OpticalParams& p) {
  ExtractOptions options;
  options.cross_check = false;
  return extract_weak_value(optical_wavefunction(p), options).weak_value;
}

Complex extract_expression(const OpticalParams& p) {
  ExtractOptions options;
  options.cross_check = false;
  return extract_from_expression(expr::parse(optical_expression_source()), "y",
                                 "beta", optical_expression_params(p), options)
      .weak_value;
}

}  // namespace

TEST_CASE("aligned polarizers produce single Gaussians") {
  SUBCASE("x-polarization sits at y = -a") {
    const OpticalParams p{0.0, 0.0, 1.0, 0.5};
    const AnalyticWave wave = optical_wavefunction(p);
    for (double y : {-2.0, -1.0, 0.0, 1.5}) {
      const double d = y + p.a;
      check_close(wave.scalar(y, p.beta),
                  Complex(std::exp(-0.5 * p.beta * d * d)), 1e-15);
    }
  }
  SUBCASE("y-polarization sits at y = 0") {
    const OpticalParams p{std::numbers::pi / 2, std::numbers::pi / 2, 1.0, 0.5};
    const AnalyticWave wave = optical_wavefunction(p);
    for (double y : {-2.0, 0.0, 1.5}) {
      check_close(wave.scalar(y, p.beta),
                  Complex(std::exp(-0.5 * p.beta * y * y)), 1e-15);
    }
  }
  SUBCASE("diagonal polarizers weigh both terms equally") {
    const OpticalParams p{std::numbers::pi / 4, std::numbers::pi / 4, 1.0, 0.5};
    const AnalyticWave wave = optical_wavefunction(p);
    const double w = 0.5;
    for (double y : {-1.0, 0.3}) {
      const double d = y + p.a;
      const Complex expected(w * std::exp(-0.5 * p.beta * d * d) +
                             w * std::exp(-0.5 * p.beta * y * y));
      check_close(wave.scalar(y, p.beta), expected, 1e-15);
    }
  }
}

TEST_CASE("closed-form weak value") {
  check_close(optical_weak_value_closed_form(
                  {std::numbers::pi / 6, std::numbers::pi / 3, 1.0, 0.0}),
              Complex(-0.5), 1e-14);
  // a = 1, eps = 0.1: -(1/2)(1 + tan eps) cot eps.
  check_close(optical_weak_value_closed_form(ritchie_params()),
              Complex(-5.483322211629619), 1e-9);
  // tan(alpha) = 0 pins the value at -a regardless of alpha'.
  for (double alphap : {0.3, -1.2, 1.0})
    check_close(optical_weak_value_closed_form({0.0, alphap, 1.0, 0.0}),
                Complex(-1.0), 1e-12);

  CHECK_THROWS_AS(optical_weak_value_closed_form(
                      {std::numbers::pi / 4, 3 * std::numbers::pi / 4, 1.0, 0.0}),
                  OrthogonalSelection);
  CHECK_THROWS_AS(optical_weak_value_closed_form(
                      {std::numbers::pi / 2, 0.3, 1.0, 0.0}),
                  DomainError);
  CHECK_THROWS_AS(optical_weak_value_closed_form({0.1, 0.2, -1.0, 0.0}),
                  DomainError);
  CHECK_THROWS_AS(optical_wavefunction(
                      {std::numbers::pi / 4, 3 * std::numbers::pi / 4, 1.0, 0.0}),
                  OrthogonalSelection);
}

TEST_CASE("equivalent two-level system matches the optics") {
  const OpticalParams p = ritchie_params();
  const MatrixSystem sys = optical_equivalent_system(p);

  check_close(weak_value_direct(sys.pre, sys.post, sys.obs).value,
              optical_weak_value_closed_form(p), 1e-12);

  // Synthesized spectral wave equals the optical wave pointwise (the
  // coefficients already coincide, so the ratio is 1).
  const PostselectedWave spectral =
      synthesize_postselected(sys.pre, sys.post, sys.obs, p.beta);
  const AnalyticWave optical = optical_wavefunction(p);
  for (double y : {-3.0, -1.0, -0.2, 0.0, 0.7, 2.0}) {
    const Complex lhs = spectral(y);
    const Complex rhs = optical.scalar(y, p.beta);
    check_close(lhs, rhs, 1e-12 * std::abs(rhs));
  }

  // alpha' = alpha reduces to the expectation value -a cos^2(alpha).
  const double alpha = 0.6;
  const MatrixSystem same = optical_equivalent_system({alpha, alpha, 2.0, 0.0});
  check_close(weak_value_direct(same.pre, same.post, same.obs).value,
              Complex(-2.0 * std::cos(alpha) * std::cos(alpha)), 1e-13);
}

TEST_CASE("three-way agreement between Eq-style routes") {
  // Closed form vs extraction from the analytic wave vs the direct
  // definition on the equivalent system, pairwise.
  const OpticalParams cases[] = {
      {std::numbers::pi / 6, std::numbers::pi / 3, 1.0, 0.0},
      ritchie_params(),
      ensemble_demo_params(),
      {0.2, 1.1, 0.7, 0.0},
      {-0.4, 0.9, 2.5, 0.0},
  };
  for (const OpticalParams& p : cases) {
    CAPTURE(p.alpha);
    CAPTURE(p.alpha_prime);
    const Complex closed = optical_weak_value_closed_form(p);
    const Complex extracted = extract_optical(p);
    const Complex from_text = extract_expression(p);
    const MatrixSystem sys = optical_equivalent_system(p);
    const Complex direct = weak_value_direct(sys.pre, sys.post, sys.obs).value;

    const double tol = 1e-10 * (1.0 + std::abs(closed));
    check_close(extracted, closed, tol);
    check_close(from_text, closed, tol);
    check_close(direct, closed, tol);
  }
}

TEST_CASE("all three routes are invariant under alpha -> alpha + pi") {
  const OpticalParams p{0.35, 2.0, 1.3, 0.0};
  OpticalParams shifted = p;
  shifted.alpha += std::numbers::pi;

  check_close(optical_weak_value_closed_form(shifted),
              optical_weak_value_closed_form(p), 1e-10);
  check_close(extract_optical(shifted), extract_optical(p), 1e-10);
  const MatrixSystem a = optical_equivalent_system(p);
  const MatrixSystem b = optical_equivalent_system(shifted);
  check_close(weak_value_direct(b.pre, b.post, b.obs).value,
              weak_value_direct(a.pre, a.post, a.obs).value, 1e-10);
}

TEST_CASE("presets are bundled and validate") {
  const std::vector<std::string> names = preset_names();
  REQUIRE(names.size() == 4);
  for (const std::string& name : names) {
    const Scenario s = preset(name);
    CHECK(s.name == name);
    CHECK(s.is_matrix());
    CHECK(s.matrix_system().pre.dim() == 2);
    CHECK(s.ensemble_n == 100000);
  }
  CHECK_THROWS_AS(preset("does-not-exist"), ValidationError);

  // The ritchie preset is the eps = 0.1 optical scenario.
  const Scenario ritchie = preset("ritchie");
  const MatrixSystem expected = optical_equivalent_system(ritchie_params());
  const MatrixSystem& actual = ritchie.matrix_system();
  for (std::size_t i = 0; i < 2; ++i) {
    check_close(actual.pre[i], expected.pre[i], 1e-15);
    check_close(actual.post[i], expected.post[i], 1e-15);
  }
  CHECK(ritchie.beta == 0.01);
}

TEST_CASE("scenario JSON round trip is exact") {
  for (const std::string& name : preset_names()) {
    const Scenario s = preset(name);
    const Scenario back = scenario_from_json(scenario_to_json(s));
    CHECK(back == s);
  }

  // Expression-form scenario, through a real file.
  const Scenario s = scenario_from_json(R"json({
    "name": "expr-roundtrip",
    "beta": 0.25,
    "seed": 7,
    "ensemble_n": 500,
    "grid": {"min": -8.0, "max": 8.0, "points": 321},
    "expression": {
      "source": "exp(-beta*(Q-3)^2/2)",
      "pointer_var": "Q",
      "width_var": "beta",
      "params": {}
    }
  })json");
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "weakval_roundtrip.json";
  save_scenario(s, path);
  const Scenario back = load_scenario(path);
  std::filesystem::remove(path);
  CHECK(back == s);
  CHECK(back.grid.has_value());
  CHECK(back.grid->points == 321);
}

TEST_CASE("scenario validation names the violated rule") {
  const auto expect_validation = [](const char* text, const char* needle) {
    try {
      scenario_from_json(text);
      FAIL_CHECK("expected ValidationError for: ", needle);
    } catch (const ValidationError& e) {
      CAPTURE(e.what());
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_validation(R"json({"name":"x","beta":0.1})json", "one of 'system' or 'expression'");

  expect_validation(R"json({
    "name": "x", "beta": 0.1,
    "system": {"dim": 2,
      "pre": [[1.0,0.0],[0.0,0.0]], "post": [[1.0,0.0],[0.0,0.0]],
      "observable": [[[0.0,0.0],[1.0,0.0]],[[1.0,0.0],[0.0,0.0]]]},
    "expression": {"source": "Q*beta"}
  })json", "mutually exclusive");

  expect_validation(R"json({
    "name": "x", "beta": 0.1,
    "system": {"dim": 2,
      "pre": [[1.0,0.0],[0.0,0.0]], "post": [[0.0,0.0],[1.0,0.0]],
      "observable": [[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[-1.0,0.0]]]}
  })json", "below the 1e-12 floor");

  expect_validation(R"json({
    "name": "x", "beta": 0.1,
    "system": {"dim": 2,
      "pre": [[1.0,0.0],[0.0,0.0]], "post": [[1.0,0.0],[0.0,0.0]],
      "observable": [[[0.0,0.0],[1.0,0.0]],[[2.0,0.0],[0.0,0.0]]]}
  })json", "Hermitian");

  expect_validation(R"json({
    "name": "x", "beta": -0.5,
    "expression": {"source": "exp(-beta*Q^2/2)"}
  })json", "beta");

  expect_validation(R"json({
    "name": "x", "beta": 0.1,
    "expression": {"source": "exp(-beta*(Q-c)^2/2)"}
  })json", "free variable 'c'");

  expect_validation(R"json({
    "name": "x", "beta": 0.1, "typo": 1,
    "expression": {"source": "exp(-beta*Q^2/2)"}
  })json", "unknown field 'typo'");

  expect_validation(R"json({
    "name": "x", "beta": 0.1,
    "grid": {"min": 2.0, "max": -2.0, "points": 100},
    "expression": {"source": "exp(-beta*Q^2/2)"}
  })json", "min must be < max");

  expect_validation(R"json({
    "name": "x", "beta": 0.1,
    "expression": {"source": "exp(-beta*Q^2/"}
  })json", "expression.source");

  CHECK_THROWS_AS(scenario_from_json("{not json"), ParseError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/path.json"), ParseError);
}

TEST_CASE("scenario accessors guard the wavefunction form") {
  const Scenario matrix = preset("ritchie");
  CHECK_NOTHROW((void)matrix.matrix_system());
  CHECK_THROWS_AS((void)matrix.expression_system(), DomainError);
  CHECK_NOTHROW((void)scenario_postselected(matrix));

  const Scenario expr_scenario = scenario_from_json(R"json({
    "name": "shifted", "beta": 0.5,
    "expression": {"source": "exp(-beta*(Q-3)^2/2)"}
  })json");
  CHECK_THROWS_AS((void)expr_scenario.matrix_system(), DomainError);
  CHECK_THROWS_AS((void)scenario_postselected(expr_scenario), DomainError);

  ExtractOptions options;
  options.cross_check = false;
  const Complex value =
      extract_weak_value(scenario_wave(expr_scenario), options).weak_value;
  check_close(value, Complex(3.0), 1e-13);
}
