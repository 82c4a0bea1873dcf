#include <weakval/finite_diff.hpp>

#include <cmath>

#include <weakval/errors.hpp>

namespace weakval {

Complex mixed_fd(const std::function<Complex(double, double)>& f, double h_q,
                 double h_beta) {
  if (!(h_q > 0.0) || !(h_beta > 0.0))
    throw DomainError("mixed_fd: step sizes must be positive");

  const auto dln_dq = [&](double beta) {
    const Complex fp = f(h_q, beta);
    const Complex fm = f(-h_q, beta);
    if (fp == Complex{} || fm == Complex{})
      throw DomainError("mixed_fd: wavefunction vanishes on a stencil point");
    return std::log(fp / fm) / (2.0 * h_q);
  };

  const Complex g0 = dln_dq(0.0);
  const Complex d_full = (dln_dq(h_beta) - g0) / h_beta;
  const Complex d_half = (dln_dq(0.5 * h_beta) - g0) / (0.5 * h_beta);
  return 2.0 * d_half - d_full;
}

}  // namespace weakval
