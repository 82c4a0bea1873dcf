#pragma once

#include <random>
#include <sstream>
#include <vector>

#include <weakval/hermitian.hpp>
#include <weakval/quantum.hpp>

#include <doctest.h>

namespace wvtest {

using weakval::Complex;

inline doctest::String show(const Complex& z) {
  std::ostringstream out;
  out << "(" << z.real() << ", " << z.imag() << ")";
  return out.str().c_str();
}

inline void check_close(const Complex& actual, const Complex& expected,
                        double tol) {
  INFO("actual = ", show(actual), ", expected = ", show(expected),
       ", tol = ", tol);
  CHECK(std::abs(actual - expected) <= tol);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Complex random_complex(std::mt19937_64& rng, double scale) {
  return {uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

/// Random Hermitian matrix with entries of order `scale`.
inline weakval::HermitianMatrix random_hermitian(std::mt19937_64& rng,
                                                 std::size_t dim, double scale) {
  std::vector<Complex> entries(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    entries[r * dim + r] = Complex(uniform(rng, -scale, scale));
    for (std::size_t c = r + 1; c < dim; ++c) {
      const Complex z = random_complex(rng, scale);
      entries[r * dim + c] = z;
      entries[c * dim + r] = std::conj(z);
    }
  }
  return {dim, std::move(entries)};
}

inline weakval::QuantumState random_state(std::mt19937_64& rng, std::size_t dim) {
  std::vector<Complex> amps(dim);
  for (Complex& a : amps) a = random_complex(rng, 1.0);
  return weakval::QuantumState(std::move(amps));
}

/// Pauli matrices and friends used all over the test suites.
inline weakval::HermitianMatrix pauli_x() {
  return {{Complex(0.0), Complex(1.0)}, {Complex(1.0), Complex(0.0)}};
}
inline weakval::HermitianMatrix pauli_z() {
  return {{Complex(1.0), Complex(0.0)}, {Complex(0.0), Complex(-1.0)}};
}
inline weakval::QuantumState plus_x() {
  return weakval::QuantumState({Complex(1.0), Complex(1.0)});
}
inline weakval::QuantumState plus_y() {
  return weakval::QuantumState({Complex(1.0), Complex(0.0, 1.0)});
}
inline weakval::QuantumState ket0() {
  return weakval::QuantumState({Complex(1.0), Complex(0.0)});
}
inline weakval::QuantumState ket1() {
  return weakval::QuantumState({Complex(0.0), Complex(1.0)});
}

}  // namespace wvtest
