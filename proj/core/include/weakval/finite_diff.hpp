#pragma once

#include <functional>

#include <weakval/complex.hpp>

namespace weakval {

/// Stencil estimate of d_beta d_Q ln f at (Q, beta) = (0, 0).
///
/// The inner derivative is a central difference in Q of ln of the ratio
/// f(+h_q, b) / f(-h_q, b) (the ratio stays near 1, keeping the
/// principal log away from its branch cut). beta = 0 is a boundary, so
/// the outer derivative is one-sided, with Richardson extrapolation over
/// h_beta and h_beta/2 removing the leading error term.
///
/// Throws DomainError if f vanishes on any stencil point.
Complex mixed_fd(const std::function<Complex(double, double)>& f, double h_q,
                 double h_beta);

}  // namespace weakval
