#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include <weakval/complex.hpp>
#include <weakval/dual.hpp>
#include <weakval/quantum.hpp>

namespace weakval {

/// Initial Gaussian detector state. beta is the inverse-square width:
/// the position-space profile is (beta/pi)^{1/4} exp(-beta Q^2 / 2).
struct GaussianPointer {
  double beta;

  explicit GaussianPointer(double beta_in);
  double width() const;               // beta^{-1/2}
  Complex amplitude(double q) const;  // normalized profile
};

/// Detector wavefunction after postselection, in spectral form:
///
///   Psi(Q; beta) = sum_k a_k exp(-beta (Q - c_k)^2 / 2),
///
/// with a_k = <post|k><k|pre> and c_k the eigenvalues of the observable.
/// The normalization prefactor is dropped on purpose: the unnormalized
/// form is entire in beta, so it can be evaluated (and differentiated)
/// at the weak-limit point beta = 0, and every consumer is either
/// normalization-invariant or normalizes on a grid.
class PostselectedWave {
 public:
  PostselectedWave(std::vector<Complex> coefficients, std::vector<double> shifts,
                   double beta);

  std::size_t terms() const noexcept { return coeffs_.size(); }
  double beta() const noexcept { return beta_; }
  const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
  const std::vector<double>& shifts() const noexcept { return shifts_; }

  Complex overlap() const;   // sum of coefficients = <post|pre>
  double max_shift() const;  // max |c_k|
  double weakness() const;   // beta * max_shift^2, the weak-regime gauge

  Complex operator()(double q) const { return eval(q, beta_); }
  Complex eval(double q, double beta) const;
  DualBi eval(const DualBi& q, const DualBi& beta) const;

  /// Same wave with every coefficient multiplied by factor (the physics
  /// is invariant under this; used to exercise exactly that).
  PostselectedWave scaled(const Complex& factor) const;

 private:
  template <class Scalar>
  Scalar eval_impl(const Scalar& q, const Scalar& beta) const;

  std::vector<Complex> coeffs_;
  std::vector<double> shifts_;
  double beta_;
};

/// Applies the impulsive von Neumann coupling and the postselection in
/// one step: each eigencomponent of the observable translates the
/// Gaussian pointer by its eigenvalue, weighted by <post|k><k|pre>.
/// Throws OrthogonalSelection when |<post|pre>| < 1e-12, DomainError for
/// beta < 0.
PostselectedWave synthesize_postselected(const QuantumState& pre,
                                         const QuantumState& post,
                                         const Observable& obs, double beta);

/// Truncation of the Aharonov-Vaidman expansion of the postselected
/// detector wave: the weak-value-shifted Gaussian exp(-beta (Q - C_w)^2 / 2)
/// for order 1, plus the correction terms n = 2..order, each carrying
/// ((C^n)_w - C_w^n) / (n! sqrt(pi)) * (-sqrt(2 beta) i)^n times the
/// integral of (x + i sqrt(beta/2) Q)^n exp(-x^2), evaluated analytically
/// by binomial expansion over gaussian_moment. Orders up to 20.
class AvSeriesExpansion {
 public:
  AvSeriesExpansion(const QuantumState& pre, const QuantumState& post,
                    const Observable& obs, int max_order);

  Complex evaluate(double beta, double q, int order) const;
  int max_order() const noexcept { return max_order_; }
  Complex weak_value() const noexcept { return moments_[1]; }

 private:
  int max_order_;
  std::vector<Complex> moments_;  // moments_[n] = (C^n)_w
};

Complex av_series_wavefunction(const QuantumState& pre, const QuantumState& post,
                               const Observable& obs, double beta, double q,
                               int order);

/// Uniform sampling grid, endpoints inclusive.
struct GridSpec {
  double q_min;
  double q_max;
  int points;

  bool operator==(const GridSpec&) const = default;
};

/// [-6 s, +6 s] with s = beta^{-1/2} + max|c_k|, 2001 points: covers
/// every shifted Gaussian to at least six widths. Throws DomainError
/// when beta == 0 (the envelope is flat; pass an explicit grid).
GridSpec default_grid(const PostselectedWave& wave);

struct GridSamples {
  std::vector<double> q;
  std::vector<Complex> psi;
};

GridSamples grid_evaluate(const std::function<Complex(double)>& wave,
                          double q_min, double q_max, int n_points);
GridSamples grid_evaluate(const PostselectedWave& wave, const GridSpec& grid);

/// Trapezoid integral of |psi|^2 over the grid.
double trapezoid_abs2(const GridSamples& samples);

/// Scale- and phase-invariant distance between two sampled waves:
/// sqrt(2 - 2 |<f, g>|) after normalizing both to unit discrete l2 norm.
/// This is the metric used everywhere a truncated series is compared to
/// the exact spectral form, which is only defined up to a constant.
double normalized_l2_distance(const GridSamples& f, const GridSamples& g);

/// CSV with header "Q,re,im,abs2", 17 significant digits per field.
void write_csv(const GridSamples& samples, std::ostream& out);

}  // namespace weakval
