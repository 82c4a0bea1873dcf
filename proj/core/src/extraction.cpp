#include <weakval/extraction.hpp>

#include <cmath>

#include <weakval/errors.hpp>
#include <weakval/finite_diff.hpp>

namespace weakval {

AnalyticWave to_analytic_wave(const PostselectedWave& wave) {
  return {
      [wave](double q, double beta) { return wave.eval(q, beta); },
      [wave](const DualBi& q, const DualBi& beta) { return wave.eval(q, beta); },
  };
}

AnalyticWave to_analytic_wave(const expr::WaveExpr& e,
                              const std::string& pointer_var,
                              const std::string& width_var,
                              const std::map<std::string, Complex>& params) {
  const auto scalar = [e, pointer_var, width_var, params](double q, double beta) {
    std::map<std::string, Complex> bindings(params.begin(), params.end());
    bindings[pointer_var] = Complex(q);
    bindings[width_var] = Complex(beta);
    return expr::evaluate(e, bindings);
  };
  const auto dual = [e, pointer_var, width_var, params](const DualBi& q,
                                                        const DualBi& beta) {
    std::map<std::string, DualBi> bindings;
    for (const auto& [name, value] : params) bindings.emplace(name, value);
    bindings[pointer_var] = q;
    bindings[width_var] = beta;
    return expr::evaluate(e, bindings);
  };
  return {scalar, dual};
}

ExtractionResult extract_weak_value(const AnalyticWave& wave,
                                    const ExtractOptions& options) {
  const DualBi value =
      wave.dual(DualBi::seed_q(Complex{}), DualBi::seed_beta(Complex{}));
  // 1e-150 guards the 1/Psi^2 term in the dual logarithm against
  // overflow; anything this small is an orthogonal selection in spirit.
  if (std::abs(value.v) < 1e-150)
    throw ZeroWavefunction(
        "extract_weak_value: wavefunction vanishes at (Q, beta) = (0, 0)");

  ExtractionResult result;
  result.weak_value = log(value).dQB;
  result.method = ExtractionMethod::Dual;

  if (options.cross_check) {
    result.fd_value = mixed_fd(wave.scalar, options.h_q, options.h_beta);
    result.cross_check_delta = std::abs(result.weak_value - *result.fd_value);
    result.consistent = *result.cross_check_delta <= kCrossCheckTolerance;
  }
  return result;
}

ExtractionResult extract_from_expression(
    const expr::WaveExpr& e, const std::string& pointer_var,
    const std::string& width_var, const std::map<std::string, Complex>& params,
    const ExtractOptions& options) {
  for (const std::string& name : e.free_vars) {
    if (name == pointer_var || name == width_var) continue;
    if (!params.contains(name))
      throw UnboundVariable("unbound variable '" + name +
                            "' (not the pointer, not the width, no --param)");
  }
  return extract_weak_value(to_analytic_wave(e, pointer_var, width_var, params),
                            options);
}

EquivalenceReport equivalence_report(const QuantumState& pre,
                                     const QuantumState& post,
                                     const Observable& obs) {
  const WeakValue direct = weak_value_direct(pre, post, obs);
  const PostselectedWave wave = synthesize_postselected(pre, post, obs, 0.0);
  ExtractOptions options;
  options.cross_check = false;
  const ExtractionResult extracted = extract_weak_value(to_analytic_wave(wave), options);
  return {direct.value, extracted.weak_value,
          std::abs(direct.value - extracted.weak_value)};
}

}  // namespace weakval
