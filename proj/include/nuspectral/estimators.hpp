#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nuspectral/grid.hpp"
#include "nuspectral/nufft.hpp"
#include "nuspectral/tapers.hpp"

namespace nuspectral {

enum class EstimatorMethod { mtnufft, mtnufft0, bg_fixed, bg_adaptive, baseline };
enum class TaperMode { interpolated, exact_nominal };

std::string method_name(EstimatorMethod m);
std::optional<EstimatorMethod> method_from_name(const std::string& name);

/// Per-band integrated power estimates. Failed bands carry a NaN sentinel
/// and the kBandFailed flag; every successful band has power >= 0.
struct SpectrumEstimate {
  BandPlan plan;
  std::vector<double> power;
  EstimatorMethod method;
  std::vector<std::size_t> k_used;
  std::vector<double> f_w_used;
  std::vector<std::uint8_t> flags;

  SpectrumEstimate(BandPlan p, std::vector<double> pw, EstimatorMethod m,
                   std::vector<std::size_t> k, std::vector<double> fw,
                   std::vector<std::uint8_t> fl);
};

/// Shifted nominal-band multitaper estimator: tapers computed once on the
/// nominal band (interpolated prolates or the exact nominal-band solve),
/// eigencoefficients pushed to every band center through one transform plan.
class MtnufftEstimator {
public:
  struct Options {
    std::size_t k_tapers = 4;
    double epsilon = 1e-8;
    TaperMode taper_mode = TaperMode::interpolated;
    NufftPathPolicy path_policy = NufftPathPolicy::auto_select;
  };

  MtnufftEstimator(const SamplingGrid& grid, const SignalBand& signal_band,
                   const BandPlan& plan, const Options& opts);

  SpectrumEstimate estimate(const std::vector<double>& values) const;
  const TaperSet& tapers() const { return tapers_; }
  const NufftPlan& transform_plan() const { return nufft_plan_; }
  EstimatorMethod method() const { return method_; }

private:
  SamplingGrid grid_;
  BandPlan plan_;
  TaperSet tapers_;
  NufftPlan nufft_plan_;
  EstimatorMethod method_;
};

/// Optimal per-band estimator: an exact concentration solve at every band.
/// Bands that cannot be solved (outside the signal band, or spectral-range
/// failures) are flagged and skipped; estimation continues elsewhere.
class BgFixedEstimator {
public:
  BgFixedEstimator(const SamplingGrid& grid, const SignalBand& signal_band,
                   const BandPlan& plan, std::size_t k_tapers);

  SpectrumEstimate estimate(const std::vector<double>& values) const;
  /// Tapers for band i (empty when the band failed).
  const std::optional<TaperSet>& band_tapers(std::size_t i) const {
    return tapers_[i];
  }

private:
  SamplingGrid grid_;
  BandPlan plan_;
  std::size_t k_tapers_;
  std::vector<std::optional<TaperSet>> tapers_;
  std::vector<std::uint8_t> flags_;
};

struct BgAdaptiveOptions {
  std::size_t k_init = 4;
  std::size_t k_max = 8;
  double f_w_init = 0.0;   // 0 -> plan half-width
  double f_w_step = 0.0;   // 0 -> 0.01 * (f_max / 0.5)
  double leakage_db = -30.0;
};

/// Adaptive variant: per band, the taper count grows from k_init to k_max
/// looking for worst-taper leakage below leakage_db; failing that the
/// half-width grows by f_w_step (up to f_max) and the scan repeats. The
/// final (K, f_w) per band is recorded in k_used / f_w_used.
class BgAdaptiveEstimator {
public:
  BgAdaptiveEstimator(const SamplingGrid& grid, const SignalBand& signal_band,
                      const BandPlan& plan, const BgAdaptiveOptions& opts);

  SpectrumEstimate estimate(const std::vector<double>& values) const;
  std::size_t k_used(std::size_t band) const { return k_used_[band]; }
  double f_w_used(std::size_t band) const { return f_w_used_[band]; }

private:
  SamplingGrid grid_;
  BandPlan plan_;
  BgAdaptiveOptions opts_;
  std::vector<std::optional<TaperSet>> tapers_;
  std::vector<std::size_t> k_used_;
  std::vector<double> f_w_used_;
  std::vector<std::uint8_t> flags_;
};

/// Single rectangular taper normalized in the R(B) metric; the plug-in
/// baseline slot for the benchmark harness.
class BaselineEstimator {
public:
  BaselineEstimator(const SamplingGrid& grid, const BandPlan& plan);

  SpectrumEstimate estimate(const std::vector<double>& values) const;

private:
  SamplingGrid grid_;
  BandPlan plan_;
  std::vector<double> taper_;
};

// One-shot wrappers (tapers recomputed per call, the cold-path semantics
// the speed harness measures).
SpectrumEstimate estimate_mtnufft(const SignalSeries& series,
                                  const SignalBand& signal_band,
                                  const BandPlan& plan, std::size_t k_tapers,
                                  double epsilon,
                                  TaperMode taper_mode = TaperMode::interpolated);
SpectrumEstimate estimate_bg_fixed(const SignalSeries& series,
                                   const SignalBand& signal_band,
                                   const BandPlan& plan, std::size_t k_tapers);
SpectrumEstimate estimate_bg_adaptive(const SignalSeries& series,
                                      const SignalBand& signal_band,
                                      const BandPlan& plan,
                                      const BgAdaptiveOptions& opts = {});
SpectrumEstimate estimate_baseline(const SignalSeries& series, const BandPlan& plan);

}  // namespace nuspectral
