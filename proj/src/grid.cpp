#include "nuspectral/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace nuspectral {

SamplingGrid::SamplingGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) {
    throw std::invalid_argument("SamplingGrid: need at least 2 samples");
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i])) {
      throw std::invalid_argument("SamplingGrid: non-finite sample time");
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw std::invalid_argument("SamplingGrid: times must be strictly increasing");
    }
  }
  mean_dt_ = (times_.back() - times_.front()) / static_cast<double>(times_.size());
}

SignalSeries::SignalSeries(SamplingGrid g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.n_samples()) {
    throw std::invalid_argument("SignalSeries: values length must match grid");
  }
}

SignalBand::SignalBand(double fmax) : f_max(fmax) {
  if (!(fmax > 0.0) || !std::isfinite(fmax)) {
    throw std::invalid_argument("SignalBand: f_max must be positive");
  }
}

AnalysisBand::AnalysisBand(double fc, double fw) : f_center(fc), half_width(fw) {
  if (!(fc >= 0.0) || !std::isfinite(fc)) {
    throw std::invalid_argument("AnalysisBand: f_center must be >= 0");
  }
  if (!(fw > 0.0) || !std::isfinite(fw)) {
    throw std::invalid_argument("AnalysisBand: half_width must be positive");
  }
}

bool band_near_boundary(double f_center, double f_max, double boundary_margin) {
  // tolerance keeps centers that sit exactly on the margin (up to roundoff
  // in f_max - f_center) unflagged
  const double tol = 1e-9 * boundary_margin;
  return f_center < boundary_margin - tol || (f_max - f_center) < boundary_margin - tol;
}

BandPlan::BandPlan(std::vector<AnalysisBand> bands, double f_max,
                   double boundary_margin)
    : bands_(std::move(bands)), f_max_(f_max), boundary_margin_(boundary_margin) {
  if (bands_.empty()) {
    throw std::invalid_argument("BandPlan: empty band set");
  }
  const double fw = bands_.front().half_width;
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    if (bands_[i].half_width != fw) {
      throw std::invalid_argument("BandPlan: bands must share one half_width");
    }
    if (i > 0 && !(bands_[i].f_center > bands_[i - 1].f_center)) {
      throw std::invalid_argument("BandPlan: centers must be strictly increasing");
    }
  }
  flags_.resize(bands_.size());
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    flags_[i] = band_near_boundary(bands_[i].f_center, f_max_, boundary_margin_) ? 1 : 0;
  }
}

std::vector<double> BandPlan::centers() const {
  std::vector<double> c(bands_.size());
  for (std::size_t i = 0; i < bands_.size(); ++i) c[i] = bands_[i].f_center;
  return c;
}

BandPlan make_band_plan(double f_max, double f_w, double spacing) {
  return make_band_plan(f_max, f_w, spacing, 2.0 * f_w);
}

BandPlan make_band_plan(double f_max, double f_w, double spacing,
                        double boundary_margin) {
  if (!(f_max > 0.0)) throw std::invalid_argument("make_band_plan: f_max must be positive");
  if (!(f_w > 0.0)) throw std::invalid_argument("make_band_plan: f_w must be positive");
  if (!(spacing > 0.0)) throw std::invalid_argument("make_band_plan: spacing must be positive");
  if (!(f_w <= f_max / 2.0)) {
    throw std::invalid_argument("make_band_plan: f_w must be <= f_max/2");
  }
  if (!(spacing <= 2.0 * f_w)) {
    throw std::invalid_argument("make_band_plan: spacing must be <= 2*f_w");
  }
  // Guard against 0.5/0.01 style quotients landing just under an integer.
  const auto count = static_cast<std::size_t>(std::floor(f_max / spacing + 1e-9)) + 1;
  std::vector<AnalysisBand> bands;
  bands.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    bands.emplace_back(static_cast<double>(i) * spacing, f_w);
  }
  return BandPlan(std::move(bands), f_max, boundary_margin);
}

}  // namespace nuspectral
