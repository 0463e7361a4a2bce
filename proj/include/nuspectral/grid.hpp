#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nuspectral {

/// Per-band status bits shared by estimators and diagnostics.
inline constexpr std::uint8_t kBandBoundary = 1;  // near 0 or f_max
inline constexpr std::uint8_t kBandFailed = 2;    // per-band solve failed

/// Strictly increasing sample instants of a nonuniformly sampled series.
/// mean_dt is defined as (t_N - t_1)/N, the average inter-sample interval
/// used by the taper interpolation bandwidth.
class SamplingGrid {
public:
  explicit SamplingGrid(std::vector<double> times);

  const std::vector<double>& times() const { return times_; }
  std::size_t n_samples() const { return times_.size(); }
  double mean_dt() const { return mean_dt_; }
  double span() const { return times_.back() - times_.front(); }
  double front() const { return times_.front(); }
  double back() const { return times_.back(); }

private:
  std::vector<double> times_;
  double mean_dt_;
};

/// Real-valued samples attached to a grid.
struct SignalSeries {
  SamplingGrid grid;
  std::vector<double> values;

  SignalSeries(SamplingGrid g, std::vector<double> v);
};

/// Presumed two-sided support of the spectrum, [-f_max, f_max].
struct SignalBand {
  double f_max;

  explicit SignalBand(double fmax);
};

/// Frequency interval [f_center - half_width, f_center + half_width];
/// 2*half_width is the frequency resolution.
struct AnalysisBand {
  double f_center;
  double half_width;

  AnalysisBand(double fc, double fw);
};

/// Ordered set of equal-width analysis bands tiling [0, f_max]. Bands
/// whose center lies within boundary_margin of 0 or f_max are flagged
/// as unreliable for estimation and are excluded from error summaries.
class BandPlan {
public:
  BandPlan(std::vector<AnalysisBand> bands, double f_max, double boundary_margin);

  const std::vector<AnalysisBand>& bands() const { return bands_; }
  std::size_t size() const { return bands_.size(); }
  double f_max() const { return f_max_; }
  double half_width() const { return bands_.front().half_width; }
  double boundary_margin() const { return boundary_margin_; }
  double center(std::size_t i) const { return bands_[i].f_center; }
  bool flagged(std::size_t i) const { return flags_[i] != 0; }
  const std::vector<std::uint8_t>& flags() const { return flags_; }

  /// Centers as a contiguous vector (the transform evaluation points).
  std::vector<double> centers() const;

private:
  std::vector<AnalysisBand> bands_;
  double f_max_;
  double boundary_margin_;
  std::vector<std::uint8_t> flags_;
};

/// True when a band centered at f_center is within boundary_margin of
/// either edge of [0, f_max].
bool band_near_boundary(double f_center, double f_max, double boundary_margin);

/// Plan centers at 0, spacing, 2*spacing, ... up to f_max, all with
/// half-width f_w. boundary_margin defaults to 2*f_w.
BandPlan make_band_plan(double f_max, double f_w, double spacing);
BandPlan make_band_plan(double f_max, double f_w, double spacing,
                        double boundary_margin);

}  // namespace nuspectral
