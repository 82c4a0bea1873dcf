#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <weakval/pointer.hpp>

namespace weakval {

struct SampleStats {
  std::size_t n = 0;
  double mean = 0.0;
  double std_dev = 0.0;    // sample standard deviation (n - 1)
  double std_error = 0.0;  // std_dev / sqrt(n)
};

SampleStats compute_stats(std::span<const double> samples);

/// Inverse-transform sampler for the readout density |Psi(Q)|^2 on a
/// grid: trapezoid CDF, piecewise-linear inverse.
///
/// Draws are produced in fixed blocks of 1024; block b runs its own
/// std::mt19937_64 seeded with a SplitMix64 hash of (seed, b), and
/// uniforms come from the top 53 bits of the raw output. Sample i
/// therefore depends only on (seed, i), so any partition of the index
/// range across workers reproduces the single-worker stream bit for bit.
class PointerSampler {
 public:
  PointerSampler(const PostselectedWave& wave, const GridSpec& grid);

  /// Inverse CDF at u in [0, 1].
  double quantile(double u) const;

  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

  /// Samples with indices [first, first + count) of the same stream.
  std::vector<double> sample_range(std::size_t first, std::size_t count,
                                   std::uint64_t seed) const;

  /// Normalized CDF knots (nondecreasing, ends at exactly 1).
  const std::vector<double>& cdf() const noexcept { return cdf_; }
  const std::vector<double>& abscissae() const noexcept { return q_; }

  static constexpr std::size_t kBlockSize = 1024;

 private:
  std::vector<double> q_;
  std::vector<double> cdf_;
};

/// Draws n pointer readouts from |Psi|^2 on the wave's default grid.
/// Requires beta > 0. Throws DegenerateDensity when the grid mass is
/// below 1e-300.
std::vector<double> sample_pointer(const PostselectedWave& wave, std::size_t n,
                                   std::uint64_t seed);
std::vector<double> sample_pointer(const PostselectedWave& wave,
                                   const GridSpec& grid, std::size_t n,
                                   std::uint64_t seed);

/// Per-n statistics for an ascending list of ensemble sizes (each >= 100),
/// every run starting from the same seed. Consumers compare
/// std_error(n) / std_error(4n) against the expected factor 2.
std::vector<SampleStats> sqrtn_study(const PostselectedWave& wave,
                                     const std::vector<std::size_t>& n_values,
                                     std::uint64_t seed);

/// Exact mean of the grid density (trapezoid quadrature, no sampling):
/// the quantity that converges to Re C_w in the weak regime.
double density_mean(const PostselectedWave& wave, const GridSpec& grid);

}  // namespace weakval
