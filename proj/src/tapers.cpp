#include "nuspectral/tapers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "nuspectral/errors.hpp"
#include "nuspectral/simd.hpp"

namespace nuspectral {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLeakageFloorDb = -150.0;

bool band_inside(const AnalysisBand& band, const SignalBand& signal) {
  const double tol = 1e-12 * signal.f_max;
  return band.f_center + band.half_width <= signal.f_max + tol;
}

double leakage_db(double concentration) {
  const double loss = std::max(1.0 - concentration, 0.0);
  if (loss <= 0.0) return kLeakageFloorDb;
  return std::max(10.0 * std::log10(loss), kLeakageFloorDb);
}

}  // namespace

DpssSet dpss_uniform(std::size_t n, double time_half_bandwidth,
                     std::size_t k_tapers) {
  if (n < 2) throw std::invalid_argument("dpss_uniform: n must be >= 2");
  if (k_tapers < 1 || k_tapers > n) {
    throw std::invalid_argument("dpss_uniform: k_tapers out of range");
  }
  if (!(time_half_bandwidth > 0.0) || !(time_half_bandwidth < n / 2.0)) {
    throw std::invalid_argument("dpss_uniform: need 0 < TW < n/2");
  }
  const double w = time_half_bandwidth / static_cast<double>(n);

  // Commuting tridiagonal operator: same eigenvectors as the sinc kernel,
  // but with well-separated eigenvalues.
  std::vector<double> diag(n), off(n - 1);
  const double c = std::cos(2.0 * kPi * w);
  for (std::size_t m = 0; m < n; ++m) {
    const double half = (static_cast<double>(n) - 1.0 - 2.0 * static_cast<double>(m)) / 2.0;
    diag[m] = half * half * c;
  }
  for (std::size_t m = 1; m < n; ++m) {
    off[m - 1] = static_cast<double>(m) * static_cast<double>(n - m) / 2.0;
  }
  EigenPairs pairs = tridiagonal_eigen(diag, off, k_tapers);

  DpssSet out;
  out.tapers.resize(k_tapers, std::vector<double>(n));
  out.concentrations.resize(k_tapers);
  for (std::size_t k = 0; k < k_tapers; ++k) {
    for (std::size_t i = 0; i < n; ++i) out.tapers[k][i] = pairs.vectors[k][i].real();
  }

  // Concentration ratios from the quadratic form with the sinc kernel.
  std::vector<double> sv(n);
  for (std::size_t k = 0; k < k_tapers; ++k) {
    const auto& v = out.tapers[k];
    double acc = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double row = 2.0 * w * v[r];
      for (std::size_t cidx = 0; cidx < n; ++cidx) {
        if (cidx == r) continue;
        const double lag = static_cast<double>(r) - static_cast<double>(cidx);
        row += std::sin(2.0 * kPi * w * lag) / (kPi * lag) * v[cidx];
      }
      acc += v[r] * row;
    }
    out.concentrations[k] = std::min(std::max(acc, 0.0), 1.0);
  }
  return out;
}

TaperSet::TaperSet(SamplingGrid grid, AnalysisBand band, double f_max,
                   std::vector<std::vector<std::complex<double>>> weights,
                   std::vector<double> eigenvalues, bool is_real)
    : grid_(std::move(grid)),
      band_(band),
      f_max_(f_max),
      is_real_(is_real),
      weights_(std::move(weights)),
      eigenvalues_(std::move(eigenvalues)) {
  if (weights_.empty()) throw std::invalid_argument("TaperSet: no tapers");
  for (const auto& w : weights_) {
    if (w.size() != grid_.n_samples()) {
      throw std::invalid_argument("TaperSet: taper length mismatch");
    }
  }
  if (!eigenvalues_.empty() && eigenvalues_.size() != weights_.size()) {
    throw std::invalid_argument("TaperSet: eigenvalue count mismatch");
  }
  if (is_real_) {
    weights_real_.resize(weights_.size());
    for (std::size_t k = 0; k < weights_.size(); ++k) {
      weights_real_[k].resize(weights_[k].size());
      for (std::size_t i = 0; i < weights_[k].size(); ++i) {
        weights_real_[k][i] = weights_[k][i].real();
      }
    }
  }
}

std::vector<std::complex<double>> TaperSet::zero_frequency_responses() const {
  std::vector<std::complex<double>> w0(k_tapers(), {0.0, 0.0});
  for (std::size_t k = 0; k < k_tapers(); ++k) {
    for (const auto& w : weights_[k]) w0[k] += w;
  }
  return w0;
}

TaperSet gpss_exact(const SamplingGrid& grid, const SignalBand& signal_band,
                    const AnalysisBand& band, std::size_t k_tapers,
                    const GeneralizedEigenOptions& opts) {
  if (!band_inside(band, signal_band)) {
    throw BandRangeError("gpss_exact: analysis band not inside signal band");
  }
  if (k_tapers < 1 || k_tapers > grid.n_samples()) {
    throw std::invalid_argument("gpss_exact: k_tapers out of range");
  }
  const KernelMatrix rb = signal_band_kernel(grid, signal_band);
  const KernelMatrix ra = analysis_band_kernel(grid, band);
  EigenPairs pairs = generalized_hermitian_eigen(ra, rb, k_tapers, opts);

  const double target = 2.0 * band.half_width;
  const bool real_band = band.f_center == 0.0;
  std::vector<std::vector<std::complex<double>>> weights(pairs.count());
  for (std::size_t k = 0; k < pairs.count(); ++k) {
    auto w = pairs.vectors[k];
    const double q = rb.quadratic_form(w);
    if (!(q > 0.0)) throw Error("gpss_exact: degenerate metric norm");
    const double s = std::sqrt(target / q);
    for (auto& x : w) x *= s;
    weights[k] = std::move(w);
  }
  return TaperSet(grid, band, signal_band.f_max, std::move(weights),
                  std::move(pairs.values), real_band);
}

TaperSet gpss_interpolated(const SamplingGrid& grid, const SignalBand& signal_band,
                           double f_w, std::size_t k_tapers) {
  const std::size_t n = grid.n_samples();
  if (n < 8) throw std::invalid_argument("gpss_interpolated: need at least 8 samples");
  if (!(f_w > 0.0)) throw std::invalid_argument("gpss_interpolated: f_w must be positive");
  const AnalysisBand nominal(0.0, f_w);
  if (!band_inside(nominal, signal_band)) {
    throw BandRangeError("gpss_interpolated: nominal band not inside signal band");
  }
  const auto& t = grid.times();
  const double h = grid.span() / static_cast<double>(n - 1);
  const double tw = f_w * h * static_cast<double>(n);
  if (!(tw < n / 2.0)) {
    throw std::invalid_argument("gpss_interpolated: f_w too large for this grid");
  }
  DpssSet dpss = dpss_uniform(n, tw, k_tapers);

  std::vector<double> knots(n);
  for (std::size_t i = 0; i < n; ++i) {
    knots[i] = t.front() + h * static_cast<double>(i);
  }
  const KernelMatrix rb = signal_band_kernel(grid, signal_band);
  const double target = 2.0 * f_w;

  std::vector<std::vector<std::complex<double>>> weights(k_tapers);
  for (std::size_t k = 0; k < k_tapers; ++k) {
    CubicSpline spline(knots, dpss.tapers[k]);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = spline(t[i]);
    const double q = rb.quadratic_form(w);
    if (!(q > 0.0)) throw Error("gpss_interpolated: degenerate metric norm");
    const double s = std::sqrt(target / q);
    weights[k].resize(n);
    for (std::size_t i = 0; i < n; ++i) weights[k][i] = {w[i] * s, 0.0};
  }
  return TaperSet(grid, nominal, signal_band.f_max, std::move(weights), {}, true);
}

TaperDiagnostics taper_diagnostics(const TaperSet& tapers,
                                   const SignalBand& signal_band) {
  const std::size_t kk = tapers.k_tapers();
  const KernelMatrix rb = signal_band_kernel(tapers.grid(), signal_band);
  const KernelMatrix ra = analysis_band_kernel(tapers.grid(), tapers.band());

  TaperDiagnostics out{};
  double vsum = 0.0;
  for (std::size_t k = 0; k < kk; ++k) {
    for (std::size_t l = 0; l < kk; ++l) {
      const std::complex<double> f =
          rb.bilinear_form(tapers.weights(k), tapers.weights(l));
      vsum += std::norm(f);
    }
  }
  out.variance_bound_factor = vsum / (static_cast<double>(kk) * static_cast<double>(kk));

  double bsum = 0.0;
  double min_ratio = 1.0;
  for (std::size_t k = 0; k < kk; ++k) {
    const double qb = rb.quadratic_form(tapers.weights(k));
    const double qa = ra.quadratic_form(tapers.weights(k));
    bsum += qb - qa;
    if (qb > 0.0) min_ratio = std::min(min_ratio, qa / qb);
  }
  out.bias_bound_factor = std::max(bsum / static_cast<double>(kk), 0.0);

  if (tapers.has_eigenvalues()) {
    out.max_leakage_db = leakage_db(tapers.eigenvalues().back());
  } else {
    out.max_leakage_db = leakage_db(min_ratio);
  }
  return out;
}

std::size_t default_taper_count(double time_half_bandwidth) {
  const auto k = static_cast<long>(std::lround(2.0 * time_half_bandwidth) - 1);
  return static_cast<std::size_t>(std::max(k, 1L));
}

}  // namespace nuspectral
