#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <weakval/errors.hpp>
#include <weakval/extraction.hpp>
#include <weakval/finite_diff.hpp>
#include <weakval/scenario.hpp>

#include "test_support.hpp"

using namespace weakval;
using wvtest::check_close;

namespace {

AnalyticWave scale_wave(const AnalyticWave& wave, const Complex& factor) {
  return {
      [wave, factor](double q, double beta) {
        return factor * wave.scalar(q, beta);
      },
      [wave, factor](const DualBi& q, const DualBi& beta) {
        return DualBi(factor) * wave.dual(q, beta);
      },
  };
}

}  // namespace

TEST_CASE("a shifted Gaussian extracts its center") {
  for (const double c : {-2.0, 0.0, 0.4, 3.0}) {
    const AnalyticWave wave = make_wave([c](auto q, auto beta) {
      using std::exp;
      using S = std::decay_t<decltype(q)>;
      const S d = q - S(c);
      return exp(S(-0.5) * beta * d * d);
    });
    const ExtractionResult r = extract_weak_value(wave);
    check_close(r.weak_value, Complex(c), 1e-14);
    CHECK(r.method == ExtractionMethod::Dual);
    REQUIRE(r.fd_value.has_value());
    CHECK(r.consistent);
    CHECK(*r.cross_check_delta <= 1e-6);
  }
}

TEST_CASE("synthesized sigma_z wave extracts exactly i") {
  const Observable sz{wvtest::pauli_z()};
  const PostselectedWave wave =
      synthesize_postselected(wvtest::plus_x(), wvtest::plus_y(), sz, 0.0);
  const ExtractionResult r = extract_weak_value(to_analytic_wave(wave));
  check_close(r.weak_value, Complex(0.0, 1.0), 1e-12);
  const Complex direct =
      weak_value_direct(wvtest::plus_x(), wvtest::plus_y(), sz).value;
  check_close(r.weak_value, direct, 1e-12);
}

TEST_CASE("parsed optical wave reproduces the amplified golden value") {
  // alpha = pi/4, alpha' = 3pi/4 + 0.1: the closed form collapses to
  // -(a/2)(1 + tan 0.1) cot 0.1.
  const OpticalParams p = ritchie_params();
  const expr::WaveExpr e = expr::parse(optical_expression_source());
  const ExtractionResult r =
      extract_from_expression(e, "y", "beta", optical_expression_params(p));
  const double golden = -0.5 * (1.0 + std::tan(0.1)) / std::tan(0.1);
  CHECK(golden == doctest::Approx(-5.483322211629619).epsilon(1e-14));
  check_close(r.weak_value, Complex(golden), 1e-9);
  CHECK(r.consistent);
}

TEST_CASE("expression extraction examples") {
  const expr::WaveExpr optical = expr::parse(optical_expression_source());

  SUBCASE("30/60 degrees gives -a/2") {
    const std::map<std::string, Complex> params = {
        {"alpha", Complex(std::numbers::pi / 6)},
        {"alphap", Complex(std::numbers::pi / 3)},
        {"a", Complex(1.0)}};
    const ExtractionResult r =
        extract_from_expression(optical, "y", "beta", params);
    check_close(r.weak_value, Complex(-0.5), 1e-12);
  }

  SUBCASE("parallel polarizers at alpha = 0 ride the shifted Gaussian") {
    const std::map<std::string, Complex> params = {
        {"alpha", Complex(0.0)}, {"alphap", Complex(0.0)}, {"a", Complex(1.0)}};
    const ExtractionResult r =
        extract_from_expression(optical, "y", "beta", params);
    check_close(r.weak_value, Complex(-1.0), 1e-13);
  }

  SUBCASE("unshifted Gaussian extracts zero") {
    const ExtractionResult r = extract_from_expression(
        expr::parse("exp(-beta*Q^2/2)"), "Q", "beta", {});
    check_close(r.weak_value, Complex(0.0), 1e-14);
  }

  SUBCASE("missing parameter is reported by name") {
    const std::map<std::string, Complex> params = {
        {"alpha", Complex(0.1)}, {"alphap", Complex(0.2)}};
    try {
      extract_from_expression(optical, "y", "beta", params);
      FAIL("expected UnboundVariable");
    } catch (const UnboundVariable& err) {
      CHECK(std::string(err.what()).find("'a'") != std::string::npos);
    }
  }
}

TEST_CASE("zero wavefunction at the origin is rejected") {
  const ExtractionResult* unused = nullptr;
  (void)unused;
  CHECK_THROWS_AS(
      extract_from_expression(expr::parse("Q*beta"), "Q", "beta", {}),
      ZeroWavefunction);
}

TEST_CASE("equivalence sweep over random finite-dimensional scenarios") {
  std::mt19937_64 rng(101);
  int runs = 0;
  double worst = 0.0;
  while (runs < 100) {
    const std::size_t dim = 2 + static_cast<std::size_t>(
                                    wvtest::uniform(rng, 0.0, 4.999));
    const Observable obs{wvtest::random_hermitian(rng, dim, 1.5)};
    const QuantumState pre = wvtest::random_state(rng, dim);
    const QuantumState post = wvtest::random_state(rng, dim);
    if (std::abs(inner(post, pre)) < 1e-3) continue;
    ++runs;

    const EquivalenceReport rep = equivalence_report(pre, post, obs);
    const double bound = 1e-10 * (1.0 + std::abs(rep.direct));
    CHECK(rep.abs_error <= bound);
    worst = std::max(worst, rep.abs_error / bound);
  }
  CHECK(runs == 100);
  CHECK(worst <= 1.0);
}

TEST_CASE("equivalence on an eigenvector preselection") {
  const Observable sz{wvtest::pauli_z()};
  const EquivalenceReport rep =
      equivalence_report(wvtest::ket0(), wvtest::plus_x(), sz);
  check_close(rep.direct, 1.0, 1e-14);
  check_close(rep.extracted, 1.0, 1e-12);
}

TEST_CASE("agreement survives nearly orthogonal selections") {
  // |<post|pre>| = 1e-6 by construction; conditioning stress case.
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t dim = 4;
    const Observable obs{wvtest::random_hermitian(rng, dim, 1.0)};
    const QuantumState pre = wvtest::random_state(rng, dim);

    std::vector<Complex> perp_raw(dim);
    for (Complex& z : perp_raw) z = wvtest::random_complex(rng, 1.0);
    Complex proj{};
    for (std::size_t i = 0; i < dim; ++i) proj += std::conj(pre[i]) * perp_raw[i];
    for (std::size_t i = 0; i < dim; ++i) perp_raw[i] -= proj * pre[i];
    const QuantumState perp(perp_raw);

    const double delta = 1e-6;
    std::vector<Complex> post_raw(dim);
    for (std::size_t i = 0; i < dim; ++i)
      post_raw[i] = delta * pre[i] + std::sqrt(1.0 - delta * delta) * perp[i];
    const QuantumState post(post_raw);

    const Complex overlap = inner(post, pre);
    REQUIRE(std::abs(overlap) == doctest::Approx(delta).epsilon(1e-6));

    const EquivalenceReport rep = equivalence_report(pre, post, obs);
    CHECK(rep.abs_error <= 1e-8 * std::abs(rep.direct));
  }
}

TEST_CASE("extraction is invariant under rescaling the wavefunction") {
  const OpticalParams p = ritchie_params();
  const AnalyticWave wave = optical_wavefunction(p);
  const Complex factor =
      Complex(7.0) * std::exp(Complex(0.0, std::numbers::pi / 5));
  const ExtractionResult base = extract_weak_value(wave);
  const ExtractionResult scaled = extract_weak_value(scale_wave(wave, factor));
  check_close(scaled.weak_value, base.weak_value, 1e-12);
}

TEST_CASE("dual and finite-difference paths agree on the presets") {
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    const Scenario s = preset(name);
    const ExtractionResult r = extract_weak_value(scenario_wave(s));
    REQUIRE(r.fd_value.has_value());
    CHECK(*r.cross_check_delta <= 1e-6);
    CHECK(r.consistent);
  }
}

TEST_CASE("mixed_fd on the optical wave matches the dual value") {
  const OpticalParams p{std::numbers::pi / 6, std::numbers::pi / 3, 1.0, 0.0};
  const AnalyticWave wave = optical_wavefunction(p);
  const Complex fd = mixed_fd(wave.scalar, 1e-4, 1e-4);
  const ExtractionResult dual = extract_weak_value(wave);
  check_close(fd, Complex(-0.5), 1e-6);
  check_close(fd, dual.weak_value, 1e-6);
}

TEST_CASE("interference of the two Gaussians is what amplifies") {
  // Full expression vs each term alone: only the interference of both
  // profiles produces the nontrivial value.
  const double alpha = std::numbers::pi / 6;
  const double alphap = std::numbers::pi / 3;
  const std::map<std::string, Complex> params = {
      {"alpha", Complex(alpha)}, {"alphap", Complex(alphap)}, {"a", Complex(1.0)}};

  const ExtractionResult full = extract_from_expression(
      expr::parse(optical_expression_source()), "y", "beta", params);
  const ExtractionResult first = extract_from_expression(
      expr::parse("cos(alpha)*cos(alphap)*exp(-beta*(y+a)^2/2)"), "y", "beta",
      params);
  const ExtractionResult second = extract_from_expression(
      expr::parse("sin(alpha)*sin(alphap)*exp(-beta*y^2/2)"), "y", "beta",
      params);

  const double expected = -1.0 / (1.0 + std::tan(alpha) * std::tan(alphap));
  check_close(full.weak_value, Complex(expected), 1e-10);
  check_close(first.weak_value, Complex(-1.0), 1e-10);
  check_close(second.weak_value, Complex(0.0), 1e-10);
}
