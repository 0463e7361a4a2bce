#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nuspectral/grid.hpp"

namespace nuspectral {

/// Deterministic splittable generator (SplitMix64 core) with Gaussian
/// deviates via the polar Box-Muller transform. Identical seeds produce
/// identical streams on any IEEE-754 platform with the same libm log/sqrt.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform on (0, 1).
  double next_uniform();
  /// Standard normal deviate.
  double next_gauss();

  /// Decorrelated stream for a keyed substream (scheme index, trial index...).
  static std::uint64_t substream(std::uint64_t seed, std::uint64_t key);

private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

enum class SamplingScheme { uniform, jitter, missing, arithmetic };

std::string scheme_name(SamplingScheme s);
std::optional<SamplingScheme> scheme_from_name(const std::string& name);

/// Configuration for the four benchmark sampling schemes. Defaults follow
/// the benchmark protocol: unit-interval uniform sampling, sigma = 0.1
/// jitter at unit intensity, the 10-of-60 missing pattern on a 5/6-spaced
/// base grid, and arithmetic sampling with a = 2/3, b = a/48.
struct SimConfig {
  SamplingScheme scheme = SamplingScheme::uniform;
  std::size_t n = 50;
  double jitter_sigma = 0.1;
  double intensity = 1.0;  // samples per unit time for the jitter scheme
  std::vector<std::size_t> missing_indices = {1, 5, 17, 18, 19, 23, 27, 32, 53, 56};
  double missing_base_dt = 5.0 / 6.0;
  double arith_a = 2.0 / 3.0;
  double arith_b = (2.0 / 3.0) / 48.0;
  std::uint64_t seed = 0;
  std::size_t retry_budget = 100;  // jitter draws rejected until monotone
};

SamplingGrid generate_grid(const SimConfig& config);

/// Independent zero-mean Gaussian draws at the sample times.
SignalSeries generate_white_noise(const SamplingGrid& grid, double variance,
                                  std::uint64_t seed);

/// Samples of a band-limited white process: covariance density * R(B),
/// generated by Cholesky coloring. On uniform Nyquist-rate grids this
/// coincides with independent draws.
SignalSeries generate_bandlimited_noise(const SamplingGrid& grid,
                                        const SignalBand& band, double density,
                                        std::uint64_t seed);

/// Reusable colored-noise source: the Cholesky factor is computed once and
/// shared across trials.
class BandlimitedNoiseGenerator {
public:
  BandlimitedNoiseGenerator(const SamplingGrid& grid, const SignalBand& band,
                            double density);
  SignalSeries generate(std::uint64_t seed) const;

private:
  SamplingGrid grid_;
  std::vector<double> chol_;  // lower triangular, row-major
};

/// amplitude * cos(2 pi freq t + phase) plus white noise (noise_var may be 0).
SignalSeries generate_line_plus_noise(const SamplingGrid& grid, double freq,
                                      double amplitude, double phase,
                                      double noise_var, std::uint64_t seed);

/// Linear interpolation onto the uniform grid t_1, t_1 + 1/rate, ... <= t_N.
SignalSeries resample_uniform(const SignalSeries& series, double rate);

}  // namespace nuspectral
