#include <weakval/ensemble.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include <weakval/errors.hpp>

namespace weakval {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (block + 1));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SampleStats compute_stats(std::span<const double> samples) {
  SampleStats stats;
  stats.n = samples.size();
  if (stats.n == 0) return stats;
  double sum = 0.0;
  for (double x : samples) sum += x;
  stats.mean = sum / static_cast<double>(stats.n);
  if (stats.n < 2) return stats;
  double ss = 0.0;
  for (double x : samples) {
    const double d = x - stats.mean;
    ss += d * d;
  }
  stats.std_dev = std::sqrt(ss / static_cast<double>(stats.n - 1));
  stats.std_error = stats.std_dev / std::sqrt(static_cast<double>(stats.n));
  return stats;
}

PointerSampler::PointerSampler(const PostselectedWave& wave,
                               const GridSpec& grid) {
  if (!(wave.beta() > 0.0))
    throw DomainError("PointerSampler: beta must be positive");
  const GridSamples samples =
      grid_evaluate(wave, grid);
  q_ = samples.q;
  cdf_.resize(q_.size());
  cdf_[0] = 0.0;
  for (std::size_t i = 1; i < q_.size(); ++i) {
    const double a = std::norm(samples.psi[i - 1]);
    const double b = std::norm(samples.psi[i]);
    cdf_[i] = cdf_[i - 1] + 0.5 * (a + b) * (q_[i] - q_[i - 1]);
  }
  const double total = cdf_.back();
  if (!(total >= 1e-300))
    throw DegenerateDensity(
        "PointerSampler: |Psi|^2 integrates to (numerically) zero on the grid");
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

double PointerSampler::quantile(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.begin()) return q_.front();
  if (it == cdf_.end()) return q_.back();
  const std::size_t hi = static_cast<std::size_t>(it - cdf_.begin());
  const std::size_t lo = hi - 1;
  const double span = cdf_[hi] - cdf_[lo];
  if (!(span > 0.0)) return q_[lo];
  const double t = (u - cdf_[lo]) / span;
  return q_[lo] + t * (q_[hi] - q_[lo]);
}

std::vector<double> PointerSampler::sample(std::size_t n,
                                           std::uint64_t seed) const {
  return sample_range(0, n, seed);
}

std::vector<double> PointerSampler::sample_range(std::size_t first,
                                                 std::size_t count,
                                                 std::uint64_t seed) const {
  std::vector<double> out;
  out.reserve(count);
  std::size_t index = first;
  const std::size_t end = first + count;
  while (index < end) {
    const std::uint64_t block = index / kBlockSize;
    std::mt19937_64 rng(block_seed(seed, block));
    // Skip ahead inside the block when the range starts mid-block.
    for (std::size_t i = block * kBlockSize; i < index; ++i) rng();
    const std::size_t block_end = std::min(end, (block + 1) * kBlockSize);
    for (; index < block_end; ++index) out.push_back(quantile(uniform01(rng)));
  }
  return out;
}

std::vector<double> sample_pointer(const PostselectedWave& wave, std::size_t n,
                                   std::uint64_t seed) {
  return sample_pointer(wave, default_grid(wave), n, seed);
}

std::vector<double> sample_pointer(const PostselectedWave& wave,
                                   const GridSpec& grid, std::size_t n,
                                   std::uint64_t seed) {
  if (n < 1) throw DomainError("sample_pointer: n must be >= 1");
  return PointerSampler(wave, grid).sample(n, seed);
}

std::vector<SampleStats> sqrtn_study(const PostselectedWave& wave,
                                     const std::vector<std::size_t>& n_values,
                                     std::uint64_t seed) {
  if (n_values.empty()) throw DomainError("sqrtn_study: empty n list");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 100)
      throw DomainError("sqrtn_study: every n must be >= 100");
    if (i > 0 && n_values[i] < n_values[i - 1])
      throw DomainError("sqrtn_study: n values must be ascending");
  }
  const PointerSampler sampler(wave, default_grid(wave));
  std::vector<SampleStats> out;
  out.reserve(n_values.size());
  for (std::size_t n : n_values) {
    const std::vector<double> samples = sampler.sample(n, seed);
    out.push_back(compute_stats(samples));
  }
  return out;
}

double density_mean(const PostselectedWave& wave, const GridSpec& grid) {
  const GridSamples samples = grid_evaluate(wave, grid);
  double mass = 0.0, first = 0.0;
  for (std::size_t i = 0; i + 1 < samples.q.size(); ++i) {
    const double dq = samples.q[i + 1] - samples.q[i];
    const double a = std::norm(samples.psi[i]);
    const double b = std::norm(samples.psi[i + 1]);
    mass += 0.5 * (a + b) * dq;
    first += 0.5 * (a * samples.q[i] + b * samples.q[i + 1]) * dq;
  }
  if (!(mass >= 1e-300))
    throw DegenerateDensity("density_mean: zero mass on the grid");
  return first / mass;
}

}  // namespace weakval
