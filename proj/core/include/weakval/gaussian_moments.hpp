#pragma once

namespace weakval {

/// Moment of the unnormalized Gaussian weight:
///   gaussian_moment(m) = integral of x^m exp(-x^2) dx over the real line,
/// i.e. 0 for odd m and Gamma((m+1)/2) for even m, built from the
/// recurrence M_0 = sqrt(pi), M_m = (m-1)/2 * M_{m-2}.
/// Supported for 0 <= m <= 40.
double gaussian_moment(int m);

}  // namespace weakval
