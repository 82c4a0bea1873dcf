#include <weakval/gaussian_moments.hpp>

#include <cmath>
#include <numbers>

#include <weakval/errors.hpp>

namespace weakval {

double gaussian_moment(int m) {
  if (m < 0 || m > 40)
    throw DomainError("gaussian_moment: order must be in [0, 40]");
  if (m % 2 != 0) return 0.0;
  double value = std::sqrt(std::numbers::pi);
  for (int k = 2; k <= m; k += 2) value *= 0.5 * (k - 1);
  return value;
}

}  // namespace weakval
