#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <weakval/complex.hpp>

namespace weakval {

/// Dense complex Hermitian matrix at desk scale (dim <= 64).
///
/// Construction validates entries[r][c] == conj(entries[c][r]) to 1e-12
/// (relative to the largest magnitude) and then stores the exactly
/// Hermitian average (A + A^dagger)/2, so the invariant holds bitwise
/// afterwards.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(std::size_t dim);
  HermitianMatrix(std::size_t dim, std::vector<Complex> row_major);
  HermitianMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t dim() const noexcept { return dim_; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return a_[r * dim_ + c];
  }

  /// Assigns (r, c) and mirrors conj(value) into (c, r). On the
  /// diagonal the imaginary part is discarded.
  void set(std::size_t r, std::size_t c, const Complex& value);

  /// Matrix-vector product m * x.
  std::vector<Complex> apply(const std::vector<Complex>& x) const;

  double frobenius_norm() const;

  bool operator==(const HermitianMatrix&) const = default;

 private:
  std::size_t dim_;
  std::vector<Complex> a_;  // row-major
};

struct EighResult {
  std::vector<double> eigenvalues;                 // ascending
  std::vector<std::vector<Complex>> eigenvectors;  // [k] = column k, orthonormal
};

/// Spectral decomposition by cyclic Jacobi rotations (complex Givens),
/// iterated until every off-diagonal magnitude drops below
/// 1e-14 * ||m||_F or 100 sweeps elapse. Throws ConvergenceError in the
/// latter case and DomainError for dim > 64.
EighResult eigh(const HermitianMatrix& m);

}  // namespace weakval
