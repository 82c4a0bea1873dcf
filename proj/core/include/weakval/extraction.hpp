#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include <weakval/complex.hpp>
#include <weakval/dual.hpp>
#include <weakval/expr.hpp>
#include <weakval/pointer.hpp>
#include <weakval/quantum.hpp>

namespace weakval {

/// A detector wavefunction Psi(Q, beta) evaluable over both scalar
/// algebras: plain complex for stencils and grids, DualBi for the exact
/// mixed derivative.
struct AnalyticWave {
  std::function<Complex(double q, double beta)> scalar;
  std::function<DualBi(const DualBi& q, const DualBi& beta)> dual;
};

/// Wraps any generic callable f(q, beta) that compiles for both algebras.
template <class F>
AnalyticWave make_wave(F f) {
  return {
      [f](double q, double beta) { return f(Complex(q), Complex(beta)); },
      [f](const DualBi& q, const DualBi& beta) { return f(q, beta); },
  };
}

AnalyticWave to_analytic_wave(const PostselectedWave& wave);
AnalyticWave to_analytic_wave(const expr::WaveExpr& e,
                              const std::string& pointer_var,
                              const std::string& width_var,
                              const std::map<std::string, Complex>& params);

enum class ExtractionMethod { Dual, FiniteDifference };

/// Agreement bound between the dual and finite-difference paths; a
/// larger gap flags the result as inconsistent.
inline constexpr double kCrossCheckTolerance = 1e-6;

struct ExtractionResult {
  Complex weak_value;  // dual-path value (exact up to rounding)
  ExtractionMethod method = ExtractionMethod::Dual;
  std::optional<Complex> fd_value;          // when the cross-check ran
  std::optional<double> cross_check_delta;  // |dual - fd|
  bool consistent = true;
};

struct ExtractOptions {
  bool cross_check = true;
  double h_q = 1e-4;
  double h_beta = 1e-4;
};

/// The extraction formula: seed Q and beta with the two infinitesimals
/// at (0, 0), evaluate the wave over DualBi, take the logarithm, and
/// read the eQ*eB coefficient; this equals
/// d_beta [ d_Q ln Psi |_{Q=0} ] |_{beta=0}, the weak value. A
/// finite-difference stencil of the same quantity serves as cross-check.
/// Throws ZeroWavefunction when Psi(0, 0) vanishes (orthogonal
/// selection or pathological input).
ExtractionResult extract_weak_value(const AnalyticWave& wave,
                                    const ExtractOptions& options = {});

/// Binds params, seeds pointer_var and width_var, and delegates.
ExtractionResult extract_from_expression(
    const expr::WaveExpr& e, const std::string& pointer_var,
    const std::string& width_var, const std::map<std::string, Complex>& params,
    const ExtractOptions& options = {});

struct EquivalenceReport {
  Complex direct;     // <post|C|pre> / <post|pre>
  Complex extracted;  // mixed log-derivative of the synthesized wave
  double abs_error;
};

/// Runs both definitions of the weak value on one selection and reports
/// the discrepancy (expected at rounding level for the dual path).
EquivalenceReport equivalence_report(const QuantumState& pre,
                                     const QuantumState& post,
                                     const Observable& obs);

}  // namespace weakval
