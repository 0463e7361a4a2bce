#pragma once

#include <complex>
#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

#include "nuspectral/eig.hpp"
#include "nuspectral/grid.hpp"
#include "nuspectral/nufft.hpp"
#include "nuspectral/tapers.hpp"

namespace nuspectral {

inline constexpr std::uint8_t kFtestConditionViolated = 1;  // 2 f_c <= f_w
inline constexpr std::uint8_t kFtestSaturated = 2;          // residual ~ 0

/// Harmonic F-test over a band plan: per-band statistic F_s, the complex
/// amplitude estimate, and upper-tail critical values at the requested
/// p-levels (by default 0.05, 0.01 and the Rayleigh level 1/N).
struct FTestResult {
  BandPlan plan;
  std::vector<double> f_stat;
  std::vector<std::complex<double>> amplitude;
  std::pair<std::size_t, std::size_t> dof;
  std::vector<std::pair<double, double>> critical_values;  // (p, threshold)
  std::vector<std::uint8_t> flags;
  double saturation_cap;
};

struct FTestOptions {
  std::vector<double> p_levels;   // empty -> {0.05, 0.01, 1/N}
  double saturation_cap = 1e12;
};

/// Regression of the eigencoefficients on the tapers' zero-frequency
/// responses; under the no-line null the statistic follows F(2, 2K-2).
/// Throws DegenerateTapers when the zero-frequency responses carry no
/// usable energy. Bands violating 2 f_c > f_w keep their statistic but are
/// flagged; a vanishing residual saturates F_s at the configured cap.
FTestResult f_test(const EigenCoefficients& eigencoeffs, const TaperSet& tapers,
                   const BandPlan& plan, const FTestOptions& opts = {});

/// Upper-tail critical value of the F(d1, d2) distribution: x such that
/// P(F > x) = p, by Newton inversion of the regularized incomplete beta
/// function. Absolute accuracy 1e-8.
double f_quantile(double p, std::size_t d1, std::size_t d2);

/// Mean absolute gap between each band's optimal concentration eigenvalues
/// and the nominal band's: 0 means the shifted nominal tapers are optimal.
struct SuboptimalityReport {
  BandPlan plan;
  std::vector<double> epsilon_measure;  // NaN when the band failed
  std::vector<std::uint8_t> flags;
};

SuboptimalityReport suboptimality(const SamplingGrid& grid,
                                  const SignalBand& signal_band,
                                  const BandPlan& plan, std::size_t k_tapers,
                                  const GeneralizedEigenOptions& opts = {});

namespace detail {

/// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double incomplete_beta(double a, double b, double x);

/// CDF of the F(d1, d2) distribution.
double f_cdf(double x, std::size_t d1, std::size_t d2);

double log_gamma(double x);

}  // namespace detail

}  // namespace nuspectral
