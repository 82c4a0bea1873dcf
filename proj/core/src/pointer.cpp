#include <weakval/pointer.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include <weakval/errors.hpp>
#include <weakval/gaussian_moments.hpp>

namespace weakval {

GaussianPointer::GaussianPointer(double beta_in) : beta(beta_in) {
  if (!(beta > 0.0))
    throw DomainError("GaussianPointer: beta must be positive");
}

double GaussianPointer::width() const { return 1.0 / std::sqrt(beta); }

Complex GaussianPointer::amplitude(double q) const {
  return std::pow(beta / std::numbers::pi, 0.25) * std::exp(-0.5 * beta * q * q);
}

PostselectedWave::PostselectedWave(std::vector<Complex> coefficients,
                                   std::vector<double> shifts, double beta)
    : coeffs_(std::move(coefficients)), shifts_(std::move(shifts)), beta_(beta) {
  if (coeffs_.empty() || coeffs_.size() != shifts_.size())
    throw DimensionMismatch("PostselectedWave: coefficient/shift size mismatch");
  if (beta_ < 0.0) throw DomainError("PostselectedWave: beta must be >= 0");
  if (std::abs(overlap()) < kOverlapFloor)
    throw OrthogonalSelection(
        "PostselectedWave: coefficients sum to (numerically) zero overlap");
}

Complex PostselectedWave::overlap() const {
  Complex acc{};
  for (const Complex& a : coeffs_) acc += a;
  return acc;
}

double PostselectedWave::max_shift() const {
  double m = 0.0;
  for (double c : shifts_) m = std::max(m, std::abs(c));
  return m;
}

double PostselectedWave::weakness() const {
  const double c = max_shift();
  return beta_ * c * c;
}

template <class Scalar>
Scalar PostselectedWave::eval_impl(const Scalar& q, const Scalar& beta) const {
  using std::exp;
  Scalar acc{};
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Scalar d = q - Scalar(shifts_[k]);
    acc = acc + Scalar(coeffs_[k]) * exp(Scalar(-0.5) * beta * d * d);
  }
  return acc;
}

Complex PostselectedWave::eval(double q, double beta) const {
  return eval_impl<Complex>(Complex(q), Complex(beta));
}

DualBi PostselectedWave::eval(const DualBi& q, const DualBi& beta) const {
  return eval_impl<DualBi>(q, beta);
}

PostselectedWave PostselectedWave::scaled(const Complex& factor) const {
  std::vector<Complex> coeffs = coeffs_;
  for (Complex& a : coeffs) a *= factor;
  return {std::move(coeffs), shifts_, beta_};
}

PostselectedWave synthesize_postselected(const QuantumState& pre,
                                         const QuantumState& post,
                                         const Observable& obs, double beta) {
  if (pre.dim() != obs.dim() || post.dim() != obs.dim())
    throw DimensionMismatch(
        "synthesize_postselected: state/observable dim mismatch");
  if (beta < 0.0)
    throw DomainError("synthesize_postselected: beta must be >= 0");

  const EighResult& spec = obs.spectrum();
  std::vector<Complex> coeffs(obs.dim());
  Complex overlap{};
  for (std::size_t k = 0; k < obs.dim(); ++k) {
    const std::vector<Complex>& vec = spec.eigenvectors[k];
    Complex post_k{}, k_pre{};
    for (std::size_t i = 0; i < obs.dim(); ++i) {
      post_k += std::conj(post[i]) * vec[i];
      k_pre += std::conj(vec[i]) * pre[i];
    }
    coeffs[k] = post_k * k_pre;
    overlap += coeffs[k];
  }
  if (std::abs(overlap) < kOverlapFloor)
    throw OrthogonalSelection(
        "synthesize_postselected: |<post|pre>| below 1e-12");
  return {std::move(coeffs), spec.eigenvalues, beta};
}

AvSeriesExpansion::AvSeriesExpansion(const QuantumState& pre,
                                     const QuantumState& post,
                                     const Observable& obs, int max_order)
    : max_order_(max_order) {
  if (max_order < 1 || max_order > 20)
    throw DomainError("AvSeriesExpansion: order must be in [1, 20]");
  moments_.resize(static_cast<std::size_t>(max_order) + 1);
  for (int n = 0; n <= max_order; ++n)
    moments_[static_cast<std::size_t>(n)] = weak_moment(pre, post, obs, n);
}

Complex AvSeriesExpansion::evaluate(double beta, double q, int order) const {
  if (order < 1 || order > max_order_)
    throw DomainError("AvSeriesExpansion: order out of prepared range");
  if (beta < 0.0) throw DomainError("AvSeriesExpansion: beta must be >= 0");

  const Complex c_w = moments_[1];
  const Complex dq = Complex(q) - c_w;
  Complex acc = std::exp(-0.5 * beta * dq * dq);
  if (order == 1) return acc;

  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const Complex envelope = std::exp(Complex(-0.5 * beta * q * q));
  const Complex s = Complex(0.0, std::sqrt(0.5 * beta) * q);
  const Complex step = Complex(0.0, -std::sqrt(2.0 * beta));

  double factorial = 1.0;
  Complex step_n = 1.0;  // (-sqrt(2 beta) i)^n
  Complex cw_n = 1.0;    // C_w^n
  for (int n = 1; n <= order; ++n) {
    factorial *= n;
    step_n *= step;
    cw_n *= c_w;
    if (n < 2) continue;

    // I_n = integral of (x + s)^n e^{-x^2} dx by binomial expansion;
    // odd Gaussian moments vanish.
    Complex integral{};
    double binom = 1.0;  // C(n, j)
    Complex s_pow = 1.0;
    for (int j = n; j >= 0; --j) {
      // binom currently C(n, j) counted from j = n downwards.
      if (j % 2 == 0) integral += binom * s_pow * gaussian_moment(j);
      binom = binom * j / (n - j + 1);
      s_pow *= s;
    }

    const Complex mu = moments_[static_cast<std::size_t>(n)] - cw_n;
    acc += envelope * mu / (factorial * sqrt_pi) * step_n * integral;
  }
  return acc;
}

Complex av_series_wavefunction(const QuantumState& pre, const QuantumState& post,
                               const Observable& obs, double beta, double q,
                               int order) {
  return AvSeriesExpansion(pre, post, obs, order).evaluate(beta, q, order);
}

GridSpec default_grid(const PostselectedWave& wave) {
  if (!(wave.beta() > 0.0))
    throw DomainError("default_grid: beta must be positive (flat envelope "
                      "at beta = 0; pass an explicit grid)");
  const double span = 6.0 * (1.0 / std::sqrt(wave.beta()) + wave.max_shift());
  return {-span, span, 2001};
}

GridSamples grid_evaluate(const std::function<Complex(double)>& wave,
                          double q_min, double q_max, int n_points) {
  if (!(q_min < q_max)) throw DomainError("grid_evaluate: q_min must be < q_max");
  if (n_points < 2) throw DomainError("grid_evaluate: need at least 2 points");
  GridSamples out;
  out.q.resize(static_cast<std::size_t>(n_points));
  out.psi.resize(static_cast<std::size_t>(n_points));
  const double dq = (q_max - q_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double q = (i == n_points - 1) ? q_max : q_min + i * dq;
    out.q[static_cast<std::size_t>(i)] = q;
    out.psi[static_cast<std::size_t>(i)] = wave(q);
  }
  return out;
}

GridSamples grid_evaluate(const PostselectedWave& wave, const GridSpec& grid) {
  return grid_evaluate([&wave](double q) { return wave(q); }, grid.q_min,
                       grid.q_max, grid.points);
}

double trapezoid_abs2(const GridSamples& samples) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < samples.q.size(); ++i) {
    const double a = std::norm(samples.psi[i]);
    const double b = std::norm(samples.psi[i + 1]);
    acc += 0.5 * (a + b) * (samples.q[i + 1] - samples.q[i]);
  }
  return acc;
}

double normalized_l2_distance(const GridSamples& f, const GridSamples& g) {
  if (f.psi.size() != g.psi.size())
    throw DimensionMismatch("normalized_l2_distance: grids differ in size");
  double nf = 0.0, ng = 0.0;
  Complex ip{};
  for (std::size_t i = 0; i < f.psi.size(); ++i) {
    nf += std::norm(f.psi[i]);
    ng += std::norm(g.psi[i]);
    ip += std::conj(f.psi[i]) * g.psi[i];
  }
  if (!(nf > 0.0) || !(ng > 0.0))
    throw DomainError("normalized_l2_distance: zero-norm sample set");

  // Residual of the phase-aligned unit vectors, accumulated directly:
  // sqrt(2 - 2|<f,g>|) in exact arithmetic, but without the cancellation
  // that formula suffers when the distance is near zero.
  const Complex phase =
      std::abs(ip) > 0.0 ? std::conj(ip) / std::abs(ip) : Complex(1.0);
  const double inv_nf = 1.0 / std::sqrt(nf);
  const double inv_ng = 1.0 / std::sqrt(ng);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.psi.size(); ++i)
    acc += std::norm(f.psi[i] * inv_nf - phase * g.psi[i] * inv_ng);
  return std::sqrt(acc);
}

void write_csv(const GridSamples& samples, std::ostream& out) {
  out << "Q,re,im,abs2\n";
  char buf[512];
  for (std::size_t i = 0; i < samples.q.size(); ++i) {
    const Complex z = samples.psi[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", samples.q[i],
                  z.real(), z.imag(), std::norm(z));
    out << buf;
  }
}

}  // namespace weakval
