#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "nuspectral/errors.hpp"
#include "nuspectral/simkit.hpp"
#include "nuspectral/tapers.hpp"
#include "support/oracles.hpp"

using namespace nuspectral;
using cplx = std::complex<double>;

namespace {

SamplingGrid uniform_grid(std::size_t n) {
  std::vector<double> t;
  for (std::size_t i = 1; i <= n; ++i) t.push_back(static_cast<double>(i));
  return SamplingGrid{t};
}

SamplingGrid jitter_grid(std::uint64_t seed, std::size_t n = 50, double sigma = 0.1) {
  SimConfig cfg;
  cfg.scheme = SamplingScheme::jitter;
  cfg.n = n;
  cfg.seed = seed;
  cfg.jitter_sigma = sigma;
  return generate_grid(cfg);
}

double rb_form(const SamplingGrid& grid, double f_max,
               const std::vector<cplx>& w) {
  const KernelMatrix rb = signal_band_kernel(grid, SignalBand(f_max));
  return rb.quadratic_form(w);
}

}  // namespace

TEST_CASE("dpss: N=50 TW=2.5 K=4 concentrations") {
  const DpssSet d = dpss_uniform(50, 2.5, 4);
  CHECK(d.concentrations[0] > 0.999);
  for (double c : d.concentrations) {
    CHECK(c > 0.9);
    CHECK(c <= 1.0);
  }
  for (std::size_t k = 1; k < 4; ++k) {
    CHECK(d.concentrations[k] < d.concentrations[k - 1]);
  }
}

TEST_CASE("dpss: parity of the first two tapers") {
  const DpssSet d = dpss_uniform(50, 2.5, 2);
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(d.tapers[0][i] == doctest::Approx(d.tapers[0][49 - i]).epsilon(1e-9));
    CHECK(d.tapers[1][i] == doctest::Approx(-d.tapers[1][49 - i]).epsilon(1e-9));
  }
}

TEST_CASE("dpss: orthonormality") {
  const DpssSet d = dpss_uniform(32, 3.0, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      double dot = 0.0;
      for (std::size_t n = 0; n < 32; ++n) dot += d.tapers[i][n] * d.tapers[j][n];
      CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("dpss input validation") {
  CHECK_THROWS_AS(dpss_uniform(10, 2.5, 11), std::invalid_argument);
  CHECK_THROWS_AS(dpss_uniform(10, 5.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(dpss_uniform(10, 0.0, 2), std::invalid_argument);
}

TEST_CASE("gpss_exact: uniform grid matches rescaled DPSS") {
  const SamplingGrid grid = uniform_grid(50);
  const TaperSet set = gpss_exact(grid, SignalBand(0.5), AnalysisBand(0.0, 0.05), 4);
  REQUIRE(set.k_tapers() == 4);
  CHECK(set.is_real());
  const DpssSet d = dpss_uniform(50, 2.5, 4);
  // R(B) = I here, so the normalized taper is sqrt(2 f_w) * dpss
  const double scale = std::sqrt(0.1);
  for (std::size_t k = 0; k < 4; ++k) {
    double dot = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
      dot += set.weights(k)[i].real() * d.tapers[k][i];
    }
    const double sign = dot >= 0.0 ? 1.0 : -1.0;
    double max_diff = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
      max_diff = std::max(max_diff, std::abs(set.weights(k)[i].real() -
                                             sign * scale * d.tapers[k][i]));
    }
    CHECK(max_diff < 1e-6);
  }
}

TEST_CASE("gpss_exact: normalization and eigenvalues on the four schemes") {
  for (SamplingScheme scheme :
       {SamplingScheme::uniform, SamplingScheme::jitter, SamplingScheme::missing,
        SamplingScheme::arithmetic}) {
    SimConfig cfg;
    cfg.scheme = scheme;
    cfg.seed = 4;
    const SamplingGrid grid = generate_grid(cfg);
    const TaperSet set =
        gpss_exact(grid, SignalBand(0.5), AnalysisBand(0.2, 0.05), 4);
    REQUIRE(set.has_eigenvalues());
    for (double lam : set.eigenvalues()) {
      CHECK(lam >= 0.0);
      CHECK(lam <= 1.0);
    }
    for (std::size_t k = 0; k < 4; ++k) {
      const double q = rb_form(grid, 0.5, set.weights(k));
      CHECK(q == doctest::Approx(0.1).epsilon(1e-8));
    }
  }
}

TEST_CASE("gpss_exact: shift consistency of eigenvalues on a uniform grid") {
  const SamplingGrid grid = uniform_grid(50);
  const TaperSet nominal = gpss_exact(grid, SignalBand(0.5), AnalysisBand(0.0, 0.05), 4);
  const TaperSet shifted = gpss_exact(grid, SignalBand(0.5), AnalysisBand(0.25, 0.05), 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(shifted.eigenvalues()[k] ==
          doctest::Approx(nominal.eigenvalues()[k]).epsilon(1e-8));
  }
}

TEST_CASE("gpss_exact: band outside the signal band is rejected") {
  const SamplingGrid grid = uniform_grid(20);
  CHECK_THROWS_AS(gpss_exact(grid, SignalBand(0.5), AnalysisBand(0.48, 0.05), 2),
                  BandRangeError);
}

TEST_CASE("gpss_interpolated: uniform grid reduces to rescaled DPSS exactly") {
  const SamplingGrid grid = uniform_grid(50);
  const TaperSet set = gpss_interpolated(grid, SignalBand(0.5), 0.05, 4);
  CHECK_FALSE(set.has_eigenvalues());
  CHECK(set.is_real());
  // On t_n = n the knot spacing is 1, so TW = 2.5 and the spline is the identity.
  const DpssSet d = dpss_uniform(50, 2.5, 4);
  const double scale = std::sqrt(0.1);
  for (std::size_t k = 0; k < 4; ++k) {
    double dot = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
      dot += set.weights_real(k)[i] * d.tapers[k][i];
    }
    const double sign = dot >= 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < 50; ++i) {
      CHECK(std::abs(set.weights_real(k)[i] - sign * scale * d.tapers[k][i]) < 1e-10);
    }
  }
}

TEST_CASE("gpss_interpolated: R(B)-metric normalization on the arithmetic grid") {
  SimConfig cfg;
  cfg.scheme = SamplingScheme::arithmetic;
  const SamplingGrid grid = generate_grid(cfg);
  const TaperSet set = gpss_interpolated(grid, SignalBand(0.5), 0.05, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(rb_form(grid, 0.5, set.weights(k)) == doctest::Approx(0.1).epsilon(1e-8));
  }
}

TEST_CASE("gpss_interpolated vs exact: subspace agreement on the jitter grid") {
  // Near-degenerate leading eigenvalues rotate individual eigenvectors, so
  // the per-taper cosine is seed-dependent; the 4-taper subspaces agree.
  const SamplingGrid grid = jitter_grid(1);
  const TaperSet approx = gpss_interpolated(grid, SignalBand(0.5), 0.05, 4);
  const TaperSet exact = gpss_exact(grid, SignalBand(0.5), AnalysisBand(0.0, 0.05), 4);
  const KernelMatrix rb = signal_band_kernel(grid, SignalBand(0.5));
  // cross-Gram in the R(B) metric: G_kl = <w~_k, R(B) w_l> / (2 f_w)
  std::vector<cplx> gram(16);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t l = 0; l < 4; ++l) {
      gram[k * 4 + l] = rb.bilinear_form(approx.weights(k), exact.weights(l)) / 0.1;
    }
  }
  // principal angles via the eigenvalues of G G^H
  std::vector<cplx> gg(16, cplx{0.0, 0.0});
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      for (std::size_t k = 0; k < 4; ++k) {
        gg[r * 4 + c] += gram[r * 4 + k] * std::conj(gram[c * 4 + k]);
      }
    }
  }
  const auto sv2 = oracles::jacobi_eigenvalues(gg, 4);
  CHECK(std::sqrt(std::max(sv2.back(), 0.0)) > 0.95);
}

TEST_CASE("gpss_interpolated quality is monotone as jitter shrinks") {
  // averaged per-taper cosine similarity over 20 seeds per sigma
  double prev = 0.0;
  for (double sigma : {0.2, 0.1, 0.05, 0.01}) {
    double acc = 0.0;
    int count = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SamplingGrid grid = jitter_grid(seed, 50, sigma);
      const TaperSet approx = gpss_interpolated(grid, SignalBand(0.5), 0.05, 4);
      const TaperSet exact =
          gpss_exact(grid, SignalBand(0.5), AnalysisBand(0.0, 0.05), 4);
      for (std::size_t k = 0; k < 4; ++k) {
        std::vector<double> a(50), e(50);
        for (std::size_t i = 0; i < 50; ++i) {
          a[i] = approx.weights_real(k)[i];
          e[i] = exact.weights(k)[i].real();
        }
        acc += oracles::cosine_similarity(a, e);
        ++count;
      }
    }
    const double mean = acc / count;
    CHECK(mean >= prev);
    prev = mean;
  }
  CHECK(prev > 0.99);  // sigma = 0.01 is essentially uniform
}

TEST_CASE("taper_diagnostics: exact GPSS reaches the orthogonal-variance floor") {
  const SamplingGrid grid = jitter_grid(9);
  const SignalBand band(0.5);
  const TaperSet set = gpss_exact(grid, band, AnalysisBand(0.0, 0.05), 4);
  const TaperDiagnostics diag = taper_diagnostics(set, band);
  // cross terms vanish for the exact solve: V = (2 f_w)^2 / K
  CHECK(diag.variance_bound_factor == doctest::Approx(0.0025).epsilon(1e-6));
  // bias-bound identity B = (2 f_w / K) sum (1 - lambda_k)
  double expect = 0.0;
  for (double lam : set.eigenvalues()) expect += 1.0 - lam;
  expect *= 0.1 / 4.0;
  CHECK(diag.bias_bound_factor == doctest::Approx(expect).epsilon(1e-8));
  CHECK(diag.max_leakage_db ==
        doctest::Approx(10.0 * std::log10(1.0 - set.eigenvalues().back()))
            .epsilon(1e-9));
}

TEST_CASE("taper_diagnostics: analysis band filling the signal band has zero bias bound") {
  const SamplingGrid grid = uniform_grid(24);
  const SignalBand band(0.5);
  const TaperSet set = gpss_exact(grid, band, AnalysisBand(0.0, 0.5), 3);
  const TaperDiagnostics diag = taper_diagnostics(set, band);
  CHECK(diag.bias_bound_factor == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("taper_diagnostics: leakage matches the DPSS concentration oracle") {
  const SamplingGrid grid = uniform_grid(50);
  const SignalBand band(0.5);
  const TaperSet set = gpss_exact(grid, band, AnalysisBand(0.0, 0.05), 4);
  const TaperDiagnostics diag = taper_diagnostics(set, band);
  const DpssSet d = dpss_uniform(50, 2.5, 4);
  CHECK(diag.max_leakage_db ==
        doctest::Approx(10.0 * std::log10(1.0 - d.concentrations[3])).epsilon(1e-4));
}

TEST_CASE("taper cross-orthogonality in the R(B) metric") {
  const SamplingGrid grid = jitter_grid(21);
  const SignalBand band(0.5);
  const TaperSet set = gpss_exact(grid, band, AnalysisBand(0.15, 0.05), 4);
  const KernelMatrix rb = signal_band_kernel(grid, band);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t l = 0; l < 4; ++l) {
      const cplx q = rb.bilinear_form(set.weights(k), set.weights(l));
      if (k == l) {
        CHECK(std::abs(q - 0.1) < 1e-8);
      } else {
        CHECK(std::abs(q) < 1e-8);
      }
    }
  }
}

TEST_CASE("default taper count") {
  CHECK(default_taper_count(2.5) == 4);
  CHECK(default_taper_count(3.5) == 6);
  CHECK(default_taper_count(0.6) == 1);
}
