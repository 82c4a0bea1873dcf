#pragma once

#include <cstddef>
#include <vector>

#include <weakval/complex.hpp>
#include <weakval/hermitian.hpp>

namespace weakval {

/// Below this overlap magnitude |<post|pre>| the selections are treated
/// as orthogonal and the weak value is reported as an error, not as a
/// huge number.
inline constexpr double kOverlapFloor = 1e-12;

/// Normalized finite-dimensional state vector. Construction normalizes;
/// amplitudes already normalized to 1e-12 are kept bit-for-bit so that
/// file round trips are stable.
class QuantumState {
 public:
  explicit QuantumState(std::vector<Complex> amplitudes);

  std::size_t dim() const noexcept { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  bool operator==(const QuantumState&) const = default;

 private:
  std::vector<Complex> amps_;
};

/// Hermitian observable with its spectral decomposition computed once at
/// construction (desk scale, so this is cheap and keeps the object
/// immutable afterwards).
class Observable {
 public:
  explicit Observable(HermitianMatrix matrix);

  std::size_t dim() const noexcept { return matrix_.dim(); }
  const HermitianMatrix& matrix() const noexcept { return matrix_; }
  const EighResult& spectrum() const noexcept { return spectrum_; }
  double spectral_radius() const;

  bool operator==(const Observable& other) const {
    return matrix_ == other.matrix_;
  }

 private:
  HermitianMatrix matrix_;
  EighResult spectrum_;
};

/// A weak value together with the post-pre overlap it was divided by,
/// so callers can judge how close to orthogonality the selection sits.
struct WeakValue {
  Complex value;
  Complex overlap;  // <post|pre>
};

/// <a|b>, conjugate-linear in a. Throws DimensionMismatch.
Complex inner(const QuantumState& a, const QuantumState& b);

/// <post|C|pre> / <post|pre> via the matrix-vector route (independent of
/// the spectral route used elsewhere). Throws OrthogonalSelection when
/// |<post|pre>| < kOverlapFloor.
WeakValue weak_value_direct(const QuantumState& pre, const QuantumState& post,
                            const Observable& obs);

/// <post|C^n|pre> / <post|pre> through the spectral decomposition,
/// sum_k lambda_k^n <post|k><k|pre> / <post|pre>, for 0 <= n <= 20.
Complex weak_moment(const QuantumState& pre, const QuantumState& post,
                    const Observable& obs, int n);

}  // namespace weakval
