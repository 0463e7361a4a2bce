#include "nuspectral/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nuspectral/errors.hpp"
#include "nuspectral/kernels.hpp"
#include "nuspectral/parallel.hpp"

namespace nuspectral {

namespace detail {

double log_gamma(double x) {
  // Lanczos g=5, n=6 coefficients.
  static const double cof[6] = {76.18009172947146,    -86.50532032941677,
                                24.01409824083091,    -1.231739572450155,
                                0.1208650973866179e-2, -0.5395239384953e-5};
  double y = x;
  double tmp = x + 5.5;
  tmp -= (x + 0.5) * std::log(tmp);
  double ser = 1.000000000190015;
  for (double c : cof) ser += c / ++y;
  return -tmp + std::log(2.5066282746310005 * ser / x);
}

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-15;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("incomplete_beta: a, b must be positive");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double lbeta = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                       a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(lbeta);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betacf(a, b, x) / a;
  }
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double f_cdf(double x, std::size_t d1, std::size_t d2) {
  if (x <= 0.0) return 0.0;
  const double a = static_cast<double>(d1) / 2.0;
  const double b = static_cast<double>(d2) / 2.0;
  const double z = static_cast<double>(d1) * x /
                   (static_cast<double>(d1) * x + static_cast<double>(d2));
  return incomplete_beta(a, b, z);
}

}  // namespace detail

double f_quantile(double p, std::size_t d1, std::size_t d2) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::invalid_argument("f_quantile: p must be in (0, 1)");
  }
  if (d1 == 0 || d2 == 0) {
    throw std::invalid_argument("f_quantile: degrees of freedom must be >= 1");
  }
  const double a = static_cast<double>(d1) / 2.0;
  const double b = static_cast<double>(d2) / 2.0;
  const double target = 1.0 - p;  // I_z(a, b) = 1 - p

  // Newton on z with a bisection bracket.
  double lo = 0.0, hi = 1.0;
  double z = a / (a + b);
  const double lbeta_const =
      detail::log_gamma(a + b) - detail::log_gamma(a) - detail::log_gamma(b);
  for (int it = 0; it < 200; ++it) {
    const double f = detail::incomplete_beta(a, b, z) - target;
    if (f > 0.0) {
      hi = z;
    } else {
      lo = z;
    }
    const double logpdf =
        lbeta_const + (a - 1.0) * std::log(z) + (b - 1.0) * std::log(1.0 - z);
    double step = f / std::exp(logpdf);
    double znew = z - step;
    if (!(znew > lo) || !(znew < hi)) znew = 0.5 * (lo + hi);
    if (std::abs(znew - z) <= 1e-15 * std::max(1.0, std::abs(z))) {
      z = znew;
      break;
    }
    z = znew;
  }
  z = std::min(std::max(z, std::numeric_limits<double>::min()), 1.0 - 1e-16);
  return static_cast<double>(d2) * z / (static_cast<double>(d1) * (1.0 - z));
}

FTestResult f_test(const EigenCoefficients& eigencoeffs, const TaperSet& tapers,
                   const BandPlan& plan, const FTestOptions& opts) {
  const std::size_t kk = tapers.k_tapers();
  if (kk < 2) throw std::invalid_argument("f_test: need at least 2 tapers");
  if (eigencoeffs.n_tapers != kk || eigencoeffs.n_bands != plan.size()) {
    throw std::invalid_argument("f_test: eigencoefficient shape mismatch");
  }
  const std::size_t n = tapers.n_samples();
  const std::vector<std::complex<double>> w0 = tapers.zero_frequency_responses();
  double w0_energy = 0.0;
  for (const auto& w : w0) w0_energy += std::norm(w);
  if (w0_energy <= 1e-14 * static_cast<double>(kk) * static_cast<double>(n)) {
    throw DegenerateTapers("f_test: zero-frequency taper responses vanish");
  }

  FTestResult out{plan,
                  std::vector<double>(plan.size(), 0.0),
                  std::vector<std::complex<double>>(plan.size(), {0.0, 0.0}),
                  {2, 2 * kk - 2},
                  {},
                  std::vector<std::uint8_t>(plan.size(), 0),
                  opts.saturation_cap};

  const double fw = plan.half_width();
  for (std::size_t i = 0; i < plan.size(); ++i) {
    std::complex<double> num{0.0, 0.0};
    for (std::size_t k = 0; k < kk; ++k) {
      num += eigencoeffs.at(k, i) * std::conj(w0[k]);
    }
    const std::complex<double> amp = num / w0_energy;
    double resid = 0.0;
    for (std::size_t k = 0; k < kk; ++k) {
      resid += std::norm(eigencoeffs.at(k, i) - amp * w0[k]);
    }
    const double numerator =
        std::norm(amp) * static_cast<double>(kk - 1) * w0_energy;
    out.amplitude[i] = amp;
    if (resid < 1e-12 * numerator) {
      out.f_stat[i] = opts.saturation_cap;
      out.flags[i] |= kFtestSaturated;
    } else {
      out.f_stat[i] = numerator / resid;
    }
    if (!(2.0 * plan.center(i) > fw)) out.flags[i] |= kFtestConditionViolated;
  }

  std::vector<double> levels = opts.p_levels;
  if (levels.empty()) {
    levels = {0.05, 0.01, 1.0 / static_cast<double>(n)};
  }
  for (double p : levels) {
    out.critical_values.emplace_back(p, f_quantile(p, 2, 2 * kk - 2));
  }
  return out;
}

SuboptimalityReport suboptimality(const SamplingGrid& grid,
                                  const SignalBand& signal_band,
                                  const BandPlan& plan, std::size_t k_tapers,
                                  const GeneralizedEigenOptions& opts) {
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  const KernelMatrix rb = signal_band_kernel(grid, signal_band);
  GeneralizedEigenOptions vopts = opts;
  vopts.want_vectors = false;

  const AnalysisBand nominal(0.0, plan.half_width());
  const std::vector<double> lam0 = generalized_hermitian_eigen(
                                       analysis_band_kernel(grid, nominal), rb,
                                       k_tapers, vopts)
                                       .values;

  SuboptimalityReport out{plan, std::vector<double>(plan.size(), kNan),
                          plan.flags()};
  const double tol = 1e-12 * signal_band.f_max;
  parallel_for(0, plan.size(), [&](std::size_t i) {
    const AnalysisBand& band = plan.bands()[i];
    if (band.f_center + band.half_width > signal_band.f_max + tol) {
      out.flags[i] |= kBandFailed;
      return;
    }
    try {
      const std::vector<double> lam =
          generalized_hermitian_eigen(analysis_band_kernel(grid, band), rb,
                                      k_tapers, vopts)
              .values;
      double acc = 0.0;
      for (std::size_t k = 0; k < k_tapers; ++k) acc += std::abs(lam[k] - lam0[k]);
      out.epsilon_measure[i] = acc / static_cast<double>(k_tapers);
    } catch (const Error&) {
      out.flags[i] |= kBandFailed;
    }
  });
  return out;
}

}  // namespace nuspectral
