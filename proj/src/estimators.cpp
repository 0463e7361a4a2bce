#include "nuspectral/estimators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "nuspectral/errors.hpp"
#include "nuspectral/parallel.hpp"
#include "nuspectral/simd.hpp"

namespace nuspectral {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kLeakageFloorDb = -150.0;

double leakage_db_from(double lambda) {
  const double loss = std::max(1.0 - lambda, 0.0);
  if (loss <= 0.0) return kLeakageFloorDb;
  return std::max(10.0 * std::log10(loss), kLeakageFloorDb);
}

// J_k = w_k^* x for every taper, then the mean squared modulus.
double band_power(const TaperSet& tapers, const std::vector<double>& x) {
  const auto& K = simd::active();
  const std::size_t kk = tapers.k_tapers();
  double acc = 0.0;
  for (std::size_t k = 0; k < kk; ++k) {
    const std::complex<double> j =
        K.cdot_conj_real(tapers.weights(k).data(), x.data(), x.size());
    acc += std::norm(j);
  }
  return acc / static_cast<double>(kk);
}

void check_series(const SamplingGrid& grid, const std::vector<double>& values) {
  if (values.size() != grid.n_samples()) {
    throw std::invalid_argument("estimate: series length does not match grid");
  }
}

}  // namespace

std::string method_name(EstimatorMethod m) {
  switch (m) {
    case EstimatorMethod::mtnufft: return "mtnufft";
    case EstimatorMethod::mtnufft0: return "mtnufft0";
    case EstimatorMethod::bg_fixed: return "bg_fixed";
    case EstimatorMethod::bg_adaptive: return "bg_adaptive";
    case EstimatorMethod::baseline: return "baseline";
  }
  return "unknown";
}

std::optional<EstimatorMethod> method_from_name(const std::string& name) {
  if (name == "mtnufft") return EstimatorMethod::mtnufft;
  if (name == "mtnufft0") return EstimatorMethod::mtnufft0;
  if (name == "bg_fixed") return EstimatorMethod::bg_fixed;
  if (name == "bg_adaptive") return EstimatorMethod::bg_adaptive;
  if (name == "baseline") return EstimatorMethod::baseline;
  return std::nullopt;
}

SpectrumEstimate::SpectrumEstimate(BandPlan p, std::vector<double> pw,
                                   EstimatorMethod m, std::vector<std::size_t> k,
                                   std::vector<double> fw,
                                   std::vector<std::uint8_t> fl)
    : plan(std::move(p)),
      power(std::move(pw)),
      method(m),
      k_used(std::move(k)),
      f_w_used(std::move(fw)),
      flags(std::move(fl)) {
  const std::size_t n = plan.size();
  if (power.size() != n || k_used.size() != n || f_w_used.size() != n ||
      flags.size() != n) {
    throw std::invalid_argument("SpectrumEstimate: per-band field length mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (flags[i] & kBandFailed) continue;
    if (!(power[i] >= 0.0)) {
      throw std::invalid_argument("SpectrumEstimate: negative power");
    }
  }
}

// ---- MTNUFFT ---------------------------------------------------------------

MtnufftEstimator::MtnufftEstimator(const SamplingGrid& grid,
                                   const SignalBand& signal_band,
                                   const BandPlan& plan, const Options& opts)
    : grid_(grid),
      plan_(plan),
      tapers_(opts.taper_mode == TaperMode::interpolated
                  ? gpss_interpolated(grid, signal_band, plan.half_width(),
                                      opts.k_tapers)
                  : gpss_exact(grid, signal_band,
                               AnalysisBand(0.0, plan.half_width()), opts.k_tapers)),
      nufft_plan_(grid, plan.centers(), opts.epsilon, opts.path_policy),
      method_(opts.taper_mode == TaperMode::interpolated
                  ? EstimatorMethod::mtnufft
                  : EstimatorMethod::mtnufft0) {}

SpectrumEstimate MtnufftEstimator::estimate(const std::vector<double>& values) const {
  check_series(grid_, values);
  const SignalSeries series(grid_, values);
  const EigenCoefficients j = eigencoefficients(tapers_, series, nufft_plan_);
  const std::size_t bands = plan_.size();
  const std::size_t kk = tapers_.k_tapers();
  std::vector<double> power(bands, 0.0);
  for (std::size_t k = 0; k < kk; ++k) {
    const std::complex<double>* row = j.row(k);
    for (std::size_t i = 0; i < bands; ++i) power[i] += std::norm(row[i]);
  }
  for (auto& p : power) p /= static_cast<double>(kk);
  return SpectrumEstimate(plan_, std::move(power), method_,
                          std::vector<std::size_t>(bands, kk),
                          std::vector<double>(bands, plan_.half_width()),
                          plan_.flags());
}

// ---- BGFixed ---------------------------------------------------------------

BgFixedEstimator::BgFixedEstimator(const SamplingGrid& grid,
                                   const SignalBand& signal_band,
                                   const BandPlan& plan, std::size_t k_tapers)
    : grid_(grid), plan_(plan), k_tapers_(k_tapers) {
  const std::size_t bands = plan_.size();
  tapers_.resize(bands);
  flags_ = plan_.flags();
  parallel_for(0, bands, [&](std::size_t i) {
    try {
      tapers_[i] = gpss_exact(grid_, signal_band, plan_.bands()[i], k_tapers_);
    } catch (const Error&) {
      flags_[i] |= kBandFailed;
    }
  });
}

SpectrumEstimate BgFixedEstimator::estimate(const std::vector<double>& values) const {
  check_series(grid_, values);
  const std::size_t bands = plan_.size();
  std::vector<double> power(bands, kNan);
  for (std::size_t i = 0; i < bands; ++i) {
    if (tapers_[i]) power[i] = band_power(*tapers_[i], values);
  }
  return SpectrumEstimate(plan_, std::move(power), EstimatorMethod::bg_fixed,
                          std::vector<std::size_t>(bands, k_tapers_),
                          std::vector<double>(bands, plan_.half_width()), flags_);
}

// ---- BGAdaptive ------------------------------------------------------------

BgAdaptiveEstimator::BgAdaptiveEstimator(const SamplingGrid& grid,
                                         const SignalBand& signal_band,
                                         const BandPlan& plan,
                                         const BgAdaptiveOptions& opts)
    : grid_(grid), plan_(plan), opts_(opts) {
  const std::size_t bands = plan_.size();
  if (opts_.k_init < 1 || opts_.k_init > opts_.k_max) {
    throw std::invalid_argument("BgAdaptive: need 1 <= k_init <= k_max");
  }
  const double f_max = signal_band.f_max;
  const double fw0 = opts_.f_w_init > 0.0 ? opts_.f_w_init : plan_.half_width();
  const double step = opts_.f_w_step > 0.0 ? opts_.f_w_step : 0.01 * (f_max / 0.5);
  if (!(fw0 <= f_max)) {
    throw std::invalid_argument("BgAdaptive: f_w_init must be <= f_max");
  }
  tapers_.resize(bands);
  k_used_.assign(bands, 0);
  f_w_used_.assign(bands, 0.0);
  flags_ = plan_.flags();

  parallel_for(0, bands, [&](std::size_t i) {
    const double fc = plan_.bands()[i].f_center;
    bool accepted = false;
    for (double fw = fw0; fw <= f_max + 1e-12 && !accepted; fw += step) {
      std::optional<TaperSet> candidate;
      try {
        candidate = gpss_exact(grid_, signal_band, AnalysisBand(fc, fw), opts_.k_max);
      } catch (const Error&) {
        break;  // band unsatisfiable beyond this width; keep the last iterate
      }
      TaperSet& set = *candidate;
      const auto& lam = set.eigenvalues();
      for (std::size_t k = opts_.k_init; k <= opts_.k_max; ++k) {
        const double leak = leakage_db_from(lam[k - 1]);
        if (leak < opts_.leakage_db) {
          std::vector<std::vector<std::complex<double>>> trimmed;
          std::vector<double> trimmed_lam;
          for (std::size_t q = 0; q < k; ++q) {
            trimmed.push_back(set.weights(q));
            trimmed_lam.push_back(lam[q]);
          }
          tapers_[i] = TaperSet(grid_, AnalysisBand(fc, fw), f_max,
                                std::move(trimmed), std::move(trimmed_lam),
                                set.is_real());
          k_used_[i] = k;
          f_w_used_[i] = fw;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        // remember the iterate so a capped search still yields an estimate
        tapers_[i] = std::move(set);
        k_used_[i] = opts_.k_max;
        f_w_used_[i] = fw;
      }
    }
    if (!tapers_[i]) flags_[i] |= kBandFailed;
  });
}

SpectrumEstimate BgAdaptiveEstimator::estimate(const std::vector<double>& values) const {
  check_series(grid_, values);
  const std::size_t bands = plan_.size();
  std::vector<double> power(bands, kNan);
  for (std::size_t i = 0; i < bands; ++i) {
    if (tapers_[i]) power[i] = band_power(*tapers_[i], values);
  }
  return SpectrumEstimate(plan_, std::move(power), EstimatorMethod::bg_adaptive,
                          k_used_, f_w_used_, flags_);
}

// ---- baseline --------------------------------------------------------------

BaselineEstimator::BaselineEstimator(const SamplingGrid& grid, const BandPlan& plan)
    : grid_(grid), plan_(plan) {
  const std::size_t n = grid_.n_samples();
  const SignalBand band(plan_.f_max());
  const KernelMatrix rb = signal_band_kernel(grid_, band);
  std::vector<double> ones(n, 1.0);
  const double q = rb.quadratic_form(ones);
  const double scale = std::sqrt(2.0 * plan_.half_width() / q);
  taper_.assign(n, scale);
}

SpectrumEstimate BaselineEstimator::estimate(const std::vector<double>& values) const {
  check_series(grid_, values);
  const auto& t = grid_.times();
  const std::size_t bands = plan_.size();
  std::vector<double> power(bands, 0.0);
  std::vector<std::complex<double>> weighted(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    weighted[i] = {taper_[i] * values[i], 0.0};
  }
  const std::vector<std::complex<double>> j =
      ndft_direct(grid_, weighted, plan_.centers());
  for (std::size_t i = 0; i < bands; ++i) power[i] = std::norm(j[i]);
  return SpectrumEstimate(plan_, std::move(power), EstimatorMethod::baseline,
                          std::vector<std::size_t>(bands, 1),
                          std::vector<double>(bands, plan_.half_width()),
                          plan_.flags());
}

// ---- one-shot wrappers -----------------------------------------------------

SpectrumEstimate estimate_mtnufft(const SignalSeries& series,
                                  const SignalBand& signal_band,
                                  const BandPlan& plan, std::size_t k_tapers,
                                  double epsilon, TaperMode taper_mode) {
  MtnufftEstimator::Options opts;
  opts.k_tapers = k_tapers;
  opts.epsilon = epsilon;
  opts.taper_mode = taper_mode;
  return MtnufftEstimator(series.grid, signal_band, plan, opts).estimate(series.values);
}

SpectrumEstimate estimate_bg_fixed(const SignalSeries& series,
                                   const SignalBand& signal_band,
                                   const BandPlan& plan, std::size_t k_tapers) {
  return BgFixedEstimator(series.grid, signal_band, plan, k_tapers)
      .estimate(series.values);
}

SpectrumEstimate estimate_bg_adaptive(const SignalSeries& series,
                                      const SignalBand& signal_band,
                                      const BandPlan& plan,
                                      const BgAdaptiveOptions& opts) {
  return BgAdaptiveEstimator(series.grid, signal_band, plan, opts)
      .estimate(series.values);
}

SpectrumEstimate estimate_baseline(const SignalSeries& series, const BandPlan& plan) {
  return BaselineEstimator(series.grid, plan).estimate(series.values);
}

}  // namespace nuspectral
