#include "nuspectral/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "nuspectral/eig.hpp"
#include "nuspectral/errors.hpp"
#include "nuspectral/kernels.hpp"
#include "nuspectral/simd.hpp"

namespace nuspectral {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
}

std::uint64_t Rng::next_u64() {
  // SplitMix64 step.
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::next_uniform() {
  for (;;) {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double Rng::next_gauss() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  for (;;) {
    const double u = 2.0 * next_uniform() - 1.0;
    const double v = 2.0 * next_uniform() - 1.0;
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }
}

std::uint64_t Rng::substream(std::uint64_t seed, std::uint64_t key) {
  // One SplitMix64 scramble of the pair keeps substreams decorrelated.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (key + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::string scheme_name(SamplingScheme s) {
  switch (s) {
    case SamplingScheme::uniform: return "uniform";
    case SamplingScheme::jitter: return "jitter";
    case SamplingScheme::missing: return "missing";
    case SamplingScheme::arithmetic: return "arithmetic";
  }
  return "unknown";
}

std::optional<SamplingScheme> scheme_from_name(const std::string& name) {
  if (name == "uniform") return SamplingScheme::uniform;
  if (name == "jitter") return SamplingScheme::jitter;
  if (name == "missing") return SamplingScheme::missing;
  if (name == "arithmetic") return SamplingScheme::arithmetic;
  return std::nullopt;
}

SamplingGrid generate_grid(const SimConfig& config) {
  if (config.n < 2) throw std::invalid_argument("generate_grid: n must be >= 2");
  std::vector<double> t;
  t.reserve(config.n);
  switch (config.scheme) {
    case SamplingScheme::uniform: {
      for (std::size_t i = 1; i <= config.n; ++i) t.push_back(static_cast<double>(i));
      break;
    }
    case SamplingScheme::jitter: {
      if (!(config.jitter_sigma >= 0.0)) {
        throw std::invalid_argument("generate_grid: jitter_sigma must be >= 0");
      }
      if (!(config.intensity > 0.0)) {
        throw std::invalid_argument("generate_grid: intensity must be > 0");
      }
      Rng rng(Rng::substream(config.seed, 0x6a69747465720000ull));
      bool ok = false;
      for (std::size_t attempt = 0; attempt < config.retry_budget && !ok; ++attempt) {
        t.clear();
        for (std::size_t i = 1; i <= config.n; ++i) {
          t.push_back(static_cast<double>(i) / config.intensity +
                      config.jitter_sigma * rng.next_gauss());
        }
        ok = true;
        for (std::size_t i = 1; i < t.size(); ++i) {
          if (!(t[i] > t[i - 1])) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) {
        throw Error("generate_grid: jitter draws never produced an increasing grid");
      }
      break;
    }
    case SamplingScheme::missing: {
      const std::size_t base_count = config.n + config.missing_indices.size();
      std::set<std::size_t> omit(config.missing_indices.begin(),
                                 config.missing_indices.end());
      if (omit.size() != config.missing_indices.size()) {
        throw std::invalid_argument("generate_grid: duplicate missing indices");
      }
      for (std::size_t idx : omit) {
        if (idx < 1 || idx > base_count) {
          throw std::invalid_argument("generate_grid: missing index out of range");
        }
      }
      for (std::size_t i = 1; i <= base_count; ++i) {
        if (omit.count(i)) continue;
        t.push_back(config.missing_base_dt * static_cast<double>(i));
      }
      break;
    }
    case SamplingScheme::arithmetic: {
      for (std::size_t i = 1; i <= config.n; ++i) {
        const double k = static_cast<double>(i - 1);
        t.push_back(1.0 + config.arith_a * k + config.arith_b * k * (k - 1.0) / 2.0);
      }
      break;
    }
  }
  return SamplingGrid(std::move(t));
}

SignalSeries generate_white_noise(const SamplingGrid& grid, double variance,
                                  std::uint64_t seed) {
  if (!(variance > 0.0)) {
    throw std::invalid_argument("generate_white_noise: variance must be > 0");
  }
  Rng rng(Rng::substream(seed, 0x676175737300ull));
  const double sd = std::sqrt(variance);
  std::vector<double> x(grid.n_samples());
  for (auto& v : x) v = sd * rng.next_gauss();
  return SignalSeries(grid, std::move(x));
}

BandlimitedNoiseGenerator::BandlimitedNoiseGenerator(const SamplingGrid& grid,
                                                     const SignalBand& band,
                                                     double density)
    : grid_(grid) {
  if (!(density > 0.0)) {
    throw std::invalid_argument("BandlimitedNoiseGenerator: density must be > 0");
  }
  const std::size_t n = grid.n_samples();
  const KernelMatrix rb = signal_band_kernel(grid, band);
  const double unit = rb.trace() / static_cast<double>(n);
  const double factors[2] = {1e-12, 1e-9};
  for (double f : factors) {
    chol_.assign(rb.re_data(), rb.re_data() + n * n);
    for (auto& v : chol_) v *= density;
    for (std::size_t i = 0; i < n; ++i) chol_[i * n + i] += f * unit * density;
    if (detail::cholesky_lower(chol_, n)) return;
  }
  throw ConditioningError("BandlimitedNoiseGenerator: kernel not factorizable");
}

SignalSeries BandlimitedNoiseGenerator::generate(std::uint64_t seed) const {
  const std::size_t n = grid_.n_samples();
  Rng rng(Rng::substream(seed, 0x636f6c6f72656400ull));
  std::vector<double> z(n);
  for (auto& v : z) v = rng.next_gauss();
  std::vector<double> x(n);
  for (std::size_t r = 0; r < n; ++r) {
    x[r] = simd::active().dot(chol_.data() + r * n, z.data(), r + 1);
  }
  return SignalSeries(grid_, std::move(x));
}

SignalSeries generate_bandlimited_noise(const SamplingGrid& grid,
                                        const SignalBand& band, double density,
                                        std::uint64_t seed) {
  return BandlimitedNoiseGenerator(grid, band, density).generate(seed);
}

SignalSeries generate_line_plus_noise(const SamplingGrid& grid, double freq,
                                      double amplitude, double phase,
                                      double noise_var, std::uint64_t seed) {
  if (!(noise_var >= 0.0)) {
    throw std::invalid_argument("generate_line_plus_noise: noise_var must be >= 0");
  }
  const auto& t = grid.times();
  std::vector<double> x(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    x[i] = amplitude * std::cos(kTwoPi * freq * t[i] + phase);
  }
  if (noise_var > 0.0) {
    Rng rng(Rng::substream(seed, 0x6c696e656e6f00ull));
    const double sd = std::sqrt(noise_var);
    for (auto& v : x) v += sd * rng.next_gauss();
  }
  return SignalSeries(grid, std::move(x));
}

SignalSeries resample_uniform(const SignalSeries& series, double rate) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("resample_uniform: rate must be > 0");
  }
  const auto& t = series.grid.times();
  const auto& x = series.values;
  const double t0 = t.front();
  const double span = t.back() - t.front();
  const auto count =
      static_cast<std::size_t>(std::floor(span * rate + 1e-12)) + 1;
  std::vector<double> tn(count), xn(count);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double ti = t0 + static_cast<double>(i) / rate;
    tn[i] = ti;
    while (seg + 2 < t.size() && t[seg + 1] < ti) ++seg;
    const double a = t[seg];
    const double b = t[seg + 1];
    const double u = std::min(std::max((ti - a) / (b - a), 0.0), 1.0);
    xn[i] = x[seg] + u * (x[seg + 1] - x[seg]);
  }
  return SignalSeries(SamplingGrid(std::move(tn)), std::move(xn));
}

}  // namespace nuspectral
