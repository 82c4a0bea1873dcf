#pragma once

#include <complex>

namespace weakval {

using Complex = std::complex<double>;

}  // namespace weakval
