#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "nuspectral/fft.hpp"
#include "nuspectral/grid.hpp"
#include "nuspectral/tapers.hpp"

namespace nuspectral {

/// Exact direct evaluation of J(f) = sum_n y_n e^{-j 2 pi f t_n} at the
/// given frequencies. This is the correctness oracle for the fast path.
std::vector<std::complex<double>> ndft_direct(const SamplingGrid& grid,
                                              const std::vector<std::complex<double>>& weighted_values,
                                              const std::vector<double>& freq_centers);

enum class NufftPath { direct, fast };
enum class NufftPathPolicy { auto_select, force_fast, force_direct };

/// Plan for repeated evaluation of the nonuniform transform onto a fixed
/// set of frequency centers. The fast path uses Gaussian gridding onto an
/// oversampled uniform grid plus a radix-2 FFT; it requires uniformly
/// spaced centers and guarantees a maximum absolute deviation from the
/// direct sum of epsilon * ||y||_1. Below kFastThreshold points the direct
/// sum is cheaper and is selected automatically; non-uniform centers fall
/// back to the direct sum as well. Plans are immutable; execution is
/// read-only and safe to share across threads.
class NufftPlan {
public:
  static constexpr std::size_t kFastThreshold = std::size_t{1} << 14;

  NufftPlan(const SamplingGrid& grid, std::vector<double> freq_centers,
            double epsilon, NufftPathPolicy policy = NufftPathPolicy::auto_select,
            int oversampling = 2);

  std::size_t n_samples() const { return times_.size(); }
  std::size_t n_centers() const { return centers_.size(); }
  const std::vector<double>& centers() const { return centers_; }
  double epsilon() const { return epsilon_; }
  int oversampling() const { return oversampling_; }
  std::size_t spread_width() const { return spread_width_; }
  NufftPath path() const { return path_; }
  bool centers_uniform() const { return centers_uniform_; }

  std::vector<std::complex<double>> execute(
      const std::vector<std::complex<double>>& weighted_values) const;

private:
  void build_fast_tables();
  std::vector<std::complex<double>> execute_fast(
      const std::vector<std::complex<double>>& weighted_values) const;

  std::vector<double> times_;
  std::vector<double> centers_;
  double epsilon_;
  int oversampling_;
  std::size_t spread_width_ = 0;
  NufftPath path_;
  bool centers_uniform_;

  // fast-path tables
  double f0_ = 0.0;
  double df_ = 0.0;
  std::size_t mr_ = 0;
  double tau_ = 0.0;
  long mode_offset_ = 0;  // modes are i - mode_offset_
  std::vector<std::complex<double>> prephase_;  // per sample
  std::vector<long> first_cell_;                // per sample, may be negative
  std::vector<double> spread_weights_;          // per sample, 2*spread_width
  std::vector<std::complex<double>> deconv_;    // per center
  std::vector<std::size_t> out_bin_;            // per center
  std::shared_ptr<Radix2Fft> fft_;
};

/// Fast transform through a plan (falls back to the exact sum when the
/// plan selected the direct path). Throws PlanMismatch when the input
/// length does not match the plan's grid.
std::vector<std::complex<double>> nufft_fast(
    const NufftPlan& plan, const std::vector<std::complex<double>>& weighted_values);

/// K x I eigencoefficients: row k is the transform of conj(w_k(t_n)) x(t_n)
/// onto the plan's centers.
struct EigenCoefficients {
  std::size_t n_tapers = 0;
  std::size_t n_bands = 0;
  std::vector<std::complex<double>> data;  // row-major K x I

  std::complex<double> at(std::size_t k, std::size_t i) const {
    return data[k * n_bands + i];
  }
  const std::complex<double>* row(std::size_t k) const {
    return data.data() + k * n_bands;
  }
};

EigenCoefficients eigencoefficients(const TaperSet& tapers,
                                    const SignalSeries& series,
                                    const NufftPlan& plan);

}  // namespace nuspectral
