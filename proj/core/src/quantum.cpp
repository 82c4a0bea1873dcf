#include <weakval/quantum.hpp>

#include <cmath>
#include <string>

#include <weakval/errors.hpp>

namespace weakval {

QuantumState::QuantumState(std::vector<Complex> amplitudes)
    : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw DomainError("QuantumState: dim must be positive");
  double norm2 = 0.0;
  for (const Complex& z : amps_) norm2 += std::norm(z);
  const double norm = std::sqrt(norm2);
  if (!(norm > 0.0))
    throw DomainError("QuantumState: zero vector cannot be normalized");
  if (std::abs(norm - 1.0) > 1e-12)
    for (Complex& z : amps_) z /= norm;
}

Observable::Observable(HermitianMatrix matrix)
    : matrix_(std::move(matrix)), spectrum_(eigh(matrix_)) {}

double Observable::spectral_radius() const {
  double r = 0.0;
  for (double lambda : spectrum_.eigenvalues)
    r = std::max(r, std::abs(lambda));
  return r;
}

Complex inner(const QuantumState& a, const QuantumState& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("inner: states have dims " +
                            std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  Complex acc{};
  for (std::size_t i = 0; i < a.dim(); ++i)
    acc += std::conj(a[i]) * b[i];
  return acc;
}

WeakValue weak_value_direct(const QuantumState& pre, const QuantumState& post,
                            const Observable& obs) {
  if (pre.dim() != obs.dim() || post.dim() != obs.dim())
    throw DimensionMismatch("weak_value_direct: state/observable dim mismatch");
  const Complex overlap = inner(post, pre);
  if (std::abs(overlap) < kOverlapFloor)
    throw OrthogonalSelection(
        "weak_value_direct: |<post|pre>| below 1e-12, weak value undefined");
  const std::vector<Complex> c_pre = obs.matrix().apply(pre.amplitudes());
  Complex numer{};
  for (std::size_t i = 0; i < post.dim(); ++i)
    numer += std::conj(post[i]) * c_pre[i];
  return {numer / overlap, overlap};
}

Complex weak_moment(const QuantumState& pre, const QuantumState& post,
                    const Observable& obs, int n) {
  if (n < 0 || n > 20) throw DomainError("weak_moment: n must be in [0, 20]");
  if (pre.dim() != obs.dim() || post.dim() != obs.dim())
    throw DimensionMismatch("weak_moment: state/observable dim mismatch");
  const Complex overlap = inner(post, pre);
  if (std::abs(overlap) < kOverlapFloor)
    throw OrthogonalSelection(
        "weak_moment: |<post|pre>| below 1e-12, weak value undefined");

  const EighResult& spec = obs.spectrum();
  Complex acc{};
  for (std::size_t k = 0; k < obs.dim(); ++k) {
    const std::vector<Complex>& vec = spec.eigenvectors[k];
    Complex post_k{}, k_pre{};
    for (std::size_t i = 0; i < obs.dim(); ++i) {
      post_k += std::conj(post[i]) * vec[i];
      k_pre += std::conj(vec[i]) * pre[i];
    }
    double lambda_n = 1.0;
    for (int j = 0; j < n; ++j) lambda_n *= spec.eigenvalues[k];
    acc += lambda_n * post_k * k_pre;
  }
  return acc / overlap;
}

}  // namespace weakval
