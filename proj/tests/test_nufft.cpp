#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "nuspectral/errors.hpp"
#include "nuspectral/nufft.hpp"
#include "nuspectral/simkit.hpp"
#include "support/oracles.hpp"

using namespace nuspectral;
using cplx = std::complex<double>;

namespace {

SamplingGrid jitter_grid(std::uint64_t seed, std::size_t n) {
  SimConfig cfg;
  cfg.scheme = SamplingScheme::jitter;
  cfg.n = n;
  cfg.seed = seed;
  return generate_grid(cfg);
}

std::vector<double> uniform_centers(std::size_t count, double spacing) {
  std::vector<double> c(count);
  for (std::size_t i = 0; i < count; ++i) c[i] = static_cast<double>(i) * spacing;
  return c;
}

std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {rng.next_gauss(), rng.next_gauss()};
  return v;
}

double l1_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::abs(z);
  return s;
}

double max_dev(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("ndft_direct: single sample and zero frequency") {
  const SamplingGrid grid{{3.0, 4.0}};
  // one-term sum at t = 3, f = 0.25: e^{-j 3 pi / 2} = +j
  const auto out = ndft_direct(grid, {{1.0, 0.0}, {0.0, 0.0}}, {0.25});
  CHECK(out[0].real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(out[0].imag() == doctest::Approx(1.0));

  const auto sum = ndft_direct(grid, {{1.5, 0.0}, {2.5, 0.0}}, {0.0});
  CHECK(sum[0].real() == doctest::Approx(4.0));
  CHECK(sum[0].imag() == doctest::Approx(0.0));
}

TEST_CASE("ndft_direct on an integer grid matches the DFT oracle") {
  const std::size_t n = 16;
  std::vector<double> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(static_cast<double>(i));
  const SamplingGrid grid{t};
  const auto x = random_complex(n, 3);
  std::vector<double> centers(n);
  for (std::size_t m = 0; m < n; ++m) {
    centers[m] = static_cast<double>(m) / static_cast<double>(n);
  }
  const auto got = ndft_direct(grid, x, centers);
  const auto expect = oracles::naive_dft(x);
  for (std::size_t m = 0; m < n; ++m) {
    CHECK(std::abs(got[m] - expect[m]) < 1e-12 * (1.0 + std::abs(expect[m])));
  }
}

TEST_CASE("fast path accuracy across the (eps, N, I) lattice") {
  for (double eps : {1e-4, 1e-6, 1e-8}) {
    for (std::size_t n : {std::size_t{50}, std::size_t{500}}) {
      for (std::size_t count : {std::size_t{64}, std::size_t{1024}}) {
        const SamplingGrid grid = jitter_grid(n + count, n);
        const auto centers = uniform_centers(count, 0.5 / static_cast<double>(count));
        const NufftPlan plan(grid, centers, eps, NufftPathPolicy::force_fast);
        CHECK(plan.path() == NufftPath::fast);
        const auto y = random_complex(n, count + 7);
        const auto fast = nufft_fast(plan, y);
        const auto direct = ndft_direct(grid, y, centers);
        CHECK(max_dev(fast, direct) <= eps * l1_norm(y));
      }
    }
  }
}

TEST_CASE("fast path error scales with requested precision") {
  const std::size_t n = 200;
  const SamplingGrid grid = jitter_grid(5, n);
  const auto centers = uniform_centers(256, 0.5 / 256.0);
  const auto y = random_complex(n, 11);
  const auto direct = ndft_direct(grid, y, centers);

  const NufftPlan loose(grid, centers, 1e-4, NufftPathPolicy::force_fast);
  const NufftPlan tight(grid, centers, 1e-10, NufftPathPolicy::force_fast);
  const double err_loose = max_dev(loose.execute(y), direct);
  const double err_tight = max_dev(tight.execute(y), direct);
  CHECK(err_tight * 1e4 <= err_loose + 1e-300);
  CHECK(err_tight <= 1e-10 * l1_norm(y));
}

TEST_CASE("uniform grid input agrees with the FFT oracle") {
  const std::size_t n = 64;
  std::vector<double> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(static_cast<double>(i));
  const SamplingGrid grid{t};
  const auto x = random_complex(n, 21);
  std::vector<double> centers(n);
  for (std::size_t m = 0; m < n; ++m) {
    centers[m] = static_cast<double>(m) / static_cast<double>(n);
  }
  const NufftPlan plan(grid, centers, 1e-8, NufftPathPolicy::force_fast);
  const auto fast = plan.execute(x);
  const auto expect = oracles::naive_dft(x);
  for (std::size_t m = 0; m < n; ++m) {
    CHECK(std::abs(fast[m] - expect[m]) <= 1e-8 * l1_norm(x));
  }
}

TEST_CASE("plan path selection and mismatches") {
  const SamplingGrid small = jitter_grid(1, 50);
  const auto centers = uniform_centers(51, 0.01);
  const NufftPlan plan(small, centers, 1e-8);
  CHECK(plan.path() == NufftPath::direct);  // 50*51 below the threshold

  const SamplingGrid big = jitter_grid(2, 500);
  const auto centers_big = uniform_centers(64, 0.5 / 64.0);
  const NufftPlan plan_big(big, centers_big, 1e-8);
  CHECK(plan_big.path() == NufftPath::fast);  // 500*64 above the threshold

  // non-uniform centers fall back to the direct path
  std::vector<double> ragged{0.0, 0.1, 0.15, 0.4};
  const NufftPlan plan_ragged(small, ragged, 1e-8);
  CHECK(plan_ragged.path() == NufftPath::direct);
  CHECK_FALSE(plan_ragged.centers_uniform());
  CHECK_THROWS_AS(NufftPlan(small, ragged, 1e-8, NufftPathPolicy::force_fast),
                  std::invalid_argument);

  CHECK_THROWS_AS(plan.execute(random_complex(49, 1)), PlanMismatch);
  CHECK_THROWS_AS(NufftPlan(small, centers, 0.5), std::invalid_argument);
}

TEST_CASE("eigencoefficients: zero input, constant input, line input") {
  SimConfig cfg;
  cfg.scheme = SamplingScheme::uniform;
  cfg.n = 50;
  const SamplingGrid grid = generate_grid(cfg);
  const SignalBand band(0.5);
  const TaperSet tapers = gpss_interpolated(grid, band, 0.05, 4);
  const BandPlan plan = make_band_plan(0.5, 0.05, 0.01);
  const NufftPlan nplan(grid, plan.centers(), 1e-8);

  // x = 0 -> all-zero matrix
  const SignalSeries zero(grid, std::vector<double>(50, 0.0));
  const EigenCoefficients jz = eigencoefficients(tapers, zero, nplan);
  for (const auto& v : jz.data) CHECK(std::abs(v) == 0.0);

  // x = 1 -> the f = 0 column equals the zero-frequency taper sums
  const SignalSeries ones(grid, std::vector<double>(50, 1.0));
  const EigenCoefficients j1 = eigencoefficients(tapers, ones, nplan);
  const auto w0 = tapers.zero_frequency_responses();
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(j1.at(k, 0) - w0[k]) < 1e-10);
  }

  // cosine line at 0.25: |J_1| peaks at the band containing 0.25
  const SignalSeries line = generate_line_plus_noise(grid, 0.25, 1.0, 0.3, 0.0, 0);
  const EigenCoefficients jl = eigencoefficients(tapers, line, nplan);
  std::size_t best = 0;
  double best_mag = 0.0;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const double mag = std::abs(jl.at(0, i));
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  CHECK(plan.center(best) == doctest::Approx(0.25).epsilon(0.021));
}

TEST_CASE("eigencoefficients are linear in the series") {
  const SamplingGrid grid = jitter_grid(31, 40);
  const SignalBand band(0.5);
  const TaperSet tapers = gpss_interpolated(grid, band, 0.05, 3);
  const BandPlan plan = make_band_plan(0.5, 0.05, 0.01);
  const NufftPlan nplan(grid, plan.centers(), 1e-8);

  Rng rng(8);
  std::vector<double> x(40), z(40), combo(40);
  for (std::size_t i = 0; i < 40; ++i) {
    x[i] = rng.next_gauss();
    z[i] = rng.next_gauss();
    combo[i] = 2.0 * x[i] - 3.0 * z[i];
  }
  const auto jx = eigencoefficients(tapers, SignalSeries(grid, x), nplan);
  const auto jz = eigencoefficients(tapers, SignalSeries(grid, z), nplan);
  const auto jc = eigencoefficients(tapers, SignalSeries(grid, combo), nplan);
  for (std::size_t idx = 0; idx < jc.data.size(); ++idx) {
    const cplx expect = 2.0 * jx.data[idx] - 3.0 * jz.data[idx];
    CHECK(std::abs(jc.data[idx] - expect) < 1e-10 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("plan mismatch when grids differ") {
  const SamplingGrid g1 = jitter_grid(1, 30);
  const SamplingGrid g2 = jitter_grid(2, 30);
  const SignalBand band(0.5);
  const TaperSet tapers = gpss_interpolated(g1, band, 0.05, 2);
  const BandPlan plan = make_band_plan(0.5, 0.05, 0.05);
  const NufftPlan nplan(g2, plan.centers(), 1e-8);
  const SignalSeries series(g2, std::vector<double>(30, 1.0));
  CHECK_THROWS_AS(eigencoefficients(tapers, series, nplan), PlanMismatch);
}
