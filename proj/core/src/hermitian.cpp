#include <weakval/hermitian.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <weakval/errors.hpp>

namespace weakval {

namespace {

double max_abs_entry(std::size_t dim, const std::vector<Complex>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < dim * dim; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

}  // namespace

HermitianMatrix::HermitianMatrix(std::size_t dim)
    : dim_(dim), a_(dim * dim) {
  if (dim == 0) throw DomainError("HermitianMatrix: dim must be positive");
}

HermitianMatrix::HermitianMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), a_(std::move(row_major)) {
  if (dim == 0) throw DomainError("HermitianMatrix: dim must be positive");
  if (a_.size() != dim * dim)
    throw DimensionMismatch("HermitianMatrix: entry count does not match dim^2");
  const double tol = 1e-12 * std::max(1.0, max_abs_entry(dim_, a_));
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      const Complex upper = a_[r * dim_ + c];
      const Complex lower = a_[c * dim_ + r];
      if (std::abs(upper - std::conj(lower)) > tol)
        throw DomainError("HermitianMatrix: entry (" + std::to_string(r) + "," +
                          std::to_string(c) + ") breaks Hermitian symmetry");
      const Complex avg = 0.5 * (upper + std::conj(lower));
      a_[r * dim_ + c] = avg;
      a_[c * dim_ + r] = std::conj(avg);
    }
    a_[r * dim_ + r] = Complex(a_[r * dim_ + r].real(), 0.0);
  }
}

HermitianMatrix::HermitianMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : HermitianMatrix(rows.size(), [&rows] {
        std::vector<Complex> flat;
        for (const auto& row : rows) {
          if (row.size() != rows.size())
            throw DimensionMismatch("HermitianMatrix: ragged initializer");
          flat.insert(flat.end(), row.begin(), row.end());
        }
        return flat;
      }()) {}

void HermitianMatrix::set(std::size_t r, std::size_t c, const Complex& value) {
  if (r == c) {
    a_[r * dim_ + c] = Complex(value.real(), 0.0);
    return;
  }
  a_[r * dim_ + c] = value;
  a_[c * dim_ + r] = std::conj(value);
}

std::vector<Complex> HermitianMatrix::apply(const std::vector<Complex>& x) const {
  if (x.size() != dim_)
    throw DimensionMismatch("HermitianMatrix::apply: vector length mismatch");
  std::vector<Complex> y(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < dim_; ++c) acc += a_[r * dim_ + c] * x[c];
    y[r] = acc;
  }
  return y;
}

double HermitianMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const Complex& z : a_) acc += std::norm(z);
  return std::sqrt(acc);
}

EighResult eigh(const HermitianMatrix& m) {
  const std::size_t n = m.dim();
  if (n > 64) throw DomainError("eigh: dim must be <= 64");

  std::vector<Complex> a(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r * n + c] = m(r, c);

  std::vector<Complex> v(n * n);  // accumulated rotations, columns = eigenvectors
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double norm = m.frobenius_norm();
  const double tol = 1e-14 * norm;

  bool converged = norm == 0.0;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        off = std::max(off, std::abs(a[p * n + q]));
    if (off < tol) {
      converged = true;
      break;
    }

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double r = std::abs(apq);
        if (r < tol) continue;

        // Complex Givens rotation zeroing (p, q): with apq = r e^{i phi},
        // U[p][p] = c, U[p][q] = s e^{i phi}, U[q][p] = -s e^{-i phi},
        // U[q][q] = c, and tan(2 theta) = 2 r / (a_qq - a_pp).
        const Complex phase = apq / r;
        const double tau = (a[q * n + q].real() - a[p * n + p].real()) / (2.0 * r);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t j = 0; j < n; ++j) {  // A <- A U
          const Complex ajp = a[j * n + p];
          const Complex ajq = a[j * n + q];
          a[j * n + p] = c * ajp - s * std::conj(phase) * ajq;
          a[j * n + q] = s * phase * ajp + c * ajq;
        }
        for (std::size_t j = 0; j < n; ++j) {  // A <- U^dagger A
          const Complex apj = a[p * n + j];
          const Complex aqj = a[q * n + j];
          a[p * n + j] = c * apj - s * phase * aqj;
          a[q * n + j] = s * std::conj(phase) * apj + c * aqj;
        }
        for (std::size_t j = 0; j < n; ++j) {  // V <- V U
          const Complex vjp = v[j * n + p];
          const Complex vjq = v[j * n + q];
          v[j * n + p] = c * vjp - s * std::conj(phase) * vjq;
          v[j * n + q] = s * phase * vjp + c * vjq;
        }

        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        a[p * n + p] = Complex(a[p * n + p].real(), 0.0);
        a[q * n + q] = Complex(a[q * n + q].real(), 0.0);
      }
    }
  }

  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        off = std::max(off, std::abs(a[p * n + q]));
    if (off >= tol)
      throw ConvergenceError("eigh: no convergence after 100 sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&a, n](std::size_t i, std::size_t j) {
    return a[i * n + i].real() < a[j * n + j].real();
  });

  EighResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors.assign(n, std::vector<Complex>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    result.eigenvalues[k] = a[src * n + src].real();
    for (std::size_t j = 0; j < n; ++j)
      result.eigenvectors[k][j] = v[j * n + src];
  }
  return result;
}

}  // namespace weakval
