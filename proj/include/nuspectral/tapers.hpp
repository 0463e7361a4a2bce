#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "nuspectral/eig.hpp"
#include "nuspectral/grid.hpp"
#include "nuspectral/kernels.hpp"

namespace nuspectral {

/// Uniform-grid prolate tapers: k unit-norm sequences maximizing energy
/// concentration in |f| <= TW/n cycles/sample, with their concentration
/// ratios. Computed from the commuting symmetric tridiagonal matrix;
/// concentrations from the quadratic form with the sinc kernel.
struct DpssSet {
  std::vector<std::vector<double>> tapers;  // K x n, unit norm
  std::vector<double> concentrations;       // in [0, 1], descending
};

DpssSet dpss_uniform(std::size_t n, double time_half_bandwidth,
                     std::size_t k_tapers);

/// K weight sequences on a sampling grid, normalized so that
/// w^* R(B) w = 2 f_w for every taper. Exact sets carry the generalized
/// eigenvalues; interpolated sets do not (diagnostics then fall back to
/// quadratic forms).
class TaperSet {
public:
  TaperSet(SamplingGrid grid, AnalysisBand band, double f_max,
           std::vector<std::vector<std::complex<double>>> weights,
           std::vector<double> eigenvalues, bool is_real);

  std::size_t k_tapers() const { return weights_.size(); }
  std::size_t n_samples() const { return grid_.n_samples(); }
  const SamplingGrid& grid() const { return grid_; }
  const AnalysisBand& band() const { return band_; }
  double f_max() const { return f_max_; }
  bool is_real() const { return is_real_; }
  bool has_eigenvalues() const { return !eigenvalues_.empty(); }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }

  const std::vector<std::complex<double>>& weights(std::size_t k) const {
    return weights_[k];
  }
  /// Real view of taper k; only valid when is_real().
  const std::vector<double>& weights_real(std::size_t k) const {
    return weights_real_[k];
  }

  /// Zero-frequency responses W_k(0) = sum_n w_k(t_n).
  std::vector<std::complex<double>> zero_frequency_responses() const;

private:
  SamplingGrid grid_;
  AnalysisBand band_;
  double f_max_;
  bool is_real_;
  std::vector<std::vector<std::complex<double>>> weights_;
  std::vector<std::vector<double>> weights_real_;
  std::vector<double> eigenvalues_;
};

/// Bound factors of a taper set: the variance bound factor
/// V = (1/K^2) sum_kl |w_k^* R(B) w_l|^2, the broad-band bias bound factor
/// B = (1/K) sum_k w_k^* [R(B) - R(A)] w_k, and the worst retained
/// sidelobe leakage 10*log10(1 - lambda_K) in dB (floored at -150 dB).
struct TaperDiagnostics {
  double variance_bound_factor;
  double bias_bound_factor;
  double max_leakage_db;
};

/// Optimal tapers for one analysis band: solves the concentration pencil
/// R(A) w = lambda R(B) w and rescales to the R(B)-metric normalization.
/// Throws BandRangeError when the band is not inside the signal band.
TaperSet gpss_exact(const SamplingGrid& grid, const SignalBand& signal_band,
                    const AnalysisBand& band, std::size_t k_tapers,
                    const GeneralizedEigenOptions& opts = {});

/// Fast approximation for the nominal band (f_c = 0): uniform-grid prolate
/// tapers interpolated to the sample times by cubic spline, then normalized
/// in the R(B) metric. Knots are anchored at t_1 with spacing
/// (t_N - t_1)/(N - 1), so on a uniform grid interpolation is the identity.
TaperSet gpss_interpolated(const SamplingGrid& grid, const SignalBand& signal_band,
                           double f_w, std::size_t k_tapers);

TaperDiagnostics taper_diagnostics(const TaperSet& tapers,
                                   const SignalBand& signal_band);

/// Conventional taper count for a given time-half-bandwidth product.
std::size_t default_taper_count(double time_half_bandwidth);

}  // namespace nuspectral
