#include "nuspectral/bench.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>

#include "nuspectral/parallel.hpp"
#include "nuspectral/simd.hpp"

namespace nuspectral {

namespace {

struct PreparedEstimators {
  std::unique_ptr<MtnufftEstimator> mtnufft;
  std::unique_ptr<MtnufftEstimator> mtnufft0;
  std::unique_ptr<BgFixedEstimator> bg_fixed;
  std::unique_ptr<BgAdaptiveEstimator> bg_adaptive;
  std::unique_ptr<BaselineEstimator> baseline;

  SpectrumEstimate run(EstimatorMethod m, const std::vector<double>& x) const {
    switch (m) {
      case EstimatorMethod::mtnufft: return mtnufft->estimate(x);
      case EstimatorMethod::mtnufft0: return mtnufft0->estimate(x);
      case EstimatorMethod::bg_fixed: return bg_fixed->estimate(x);
      case EstimatorMethod::bg_adaptive: return bg_adaptive->estimate(x);
      case EstimatorMethod::baseline: return baseline->estimate(x);
    }
    throw std::invalid_argument("unknown estimator method");
  }
};

PreparedEstimators prepare(const std::vector<EstimatorMethod>& methods,
                           const SamplingGrid& grid, const SignalBand& band,
                           const BandPlan& plan, const BenchConfig& cfg) {
  PreparedEstimators out;
  for (EstimatorMethod m : methods) {
    switch (m) {
      case EstimatorMethod::mtnufft: {
        MtnufftEstimator::Options o;
        o.k_tapers = cfg.k_tapers;
        o.epsilon = cfg.epsilon;
        o.taper_mode = TaperMode::interpolated;
        out.mtnufft = std::make_unique<MtnufftEstimator>(grid, band, plan, o);
        break;
      }
      case EstimatorMethod::mtnufft0: {
        MtnufftEstimator::Options o;
        o.k_tapers = cfg.k_tapers;
        o.epsilon = cfg.epsilon;
        o.taper_mode = TaperMode::exact_nominal;
        out.mtnufft0 = std::make_unique<MtnufftEstimator>(grid, band, plan, o);
        break;
      }
      case EstimatorMethod::bg_fixed:
        out.bg_fixed =
            std::make_unique<BgFixedEstimator>(grid, band, plan, cfg.k_tapers);
        break;
      case EstimatorMethod::bg_adaptive: {
        BgAdaptiveOptions o = cfg.adaptive;
        if (o.f_w_init <= 0.0) o.f_w_init = cfg.f_w;
        out.bg_adaptive =
            std::make_unique<BgAdaptiveEstimator>(grid, band, plan, o);
        break;
      }
      case EstimatorMethod::baseline:
        out.baseline = std::make_unique<BaselineEstimator>(grid, plan);
        break;
    }
  }
  return out;
}

SimConfig scheme_config(SamplingScheme scheme, std::size_t n, std::uint64_t seed) {
  SimConfig sim;
  sim.scheme = scheme;
  sim.n = n;
  sim.seed = seed;
  return sim;
}

std::string environment_fingerprint() {
  return "simd=" + simd::active_name() +
         " threads=" + std::to_string(worker_thread_count());
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// One-shot cold estimate, the workload the speed harness times.
void run_cold(EstimatorMethod m, const SignalSeries& series,
              const SignalBand& band, const BandPlan& plan,
              const BenchConfig& cfg) {
  switch (m) {
    case EstimatorMethod::mtnufft:
      estimate_mtnufft(series, band, plan, cfg.k_tapers, cfg.epsilon,
                       TaperMode::interpolated);
      return;
    case EstimatorMethod::mtnufft0:
      estimate_mtnufft(series, band, plan, cfg.k_tapers, cfg.epsilon,
                       TaperMode::exact_nominal);
      return;
    case EstimatorMethod::bg_fixed:
      estimate_bg_fixed(series, band, plan, cfg.k_tapers);
      return;
    case EstimatorMethod::bg_adaptive: {
      BgAdaptiveOptions o = cfg.adaptive;
      if (o.f_w_init <= 0.0) o.f_w_init = cfg.f_w;
      estimate_bg_adaptive(series, band, plan, o);
      return;
    }
    case EstimatorMethod::baseline:
      estimate_baseline(series, plan);
      return;
  }
}

}  // namespace

std::vector<ErrorReport> run_error_analysis(
    const std::vector<EstimatorMethod>& methods,
    const std::vector<SamplingScheme>& schemes, std::size_t trials,
    std::uint64_t base_seed, const BenchConfig& config) {
  if (trials < 2) throw std::invalid_argument("run_error_analysis: trials must be >= 2");
  const SignalBand band(config.f_max);
  const BandPlan plan = make_band_plan(config.f_max, config.f_w, config.spacing);
  const std::size_t bands = plan.size();

  std::vector<ErrorReport> reports;
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    const SamplingScheme scheme = schemes[s];
    const SamplingGrid grid = generate_grid(
        scheme_config(scheme, config.n_samples, Rng::substream(base_seed, s)));
    const BandlimitedNoiseGenerator noise(grid, band, 1.0);
    const PreparedEstimators est = prepare(methods, grid, band, plan, config);

    // per method: trial-major matrix of squared dB errors
    std::vector<std::vector<double>> sq(methods.size());
    for (auto& v : sq) v.assign(trials * bands, 0.0);
    std::vector<std::vector<std::uint8_t>> flags(methods.size(),
                                                 plan.flags());

    for (std::size_t m = 0; m < trials; ++m) {
      const SignalSeries series =
          noise.generate(Rng::substream(base_seed, (s + 1) * 1000003ull + m));
      for (std::size_t q = 0; q < methods.size(); ++q) {
        const SpectrumEstimate e = est.run(methods[q], series.values);
        if (m == 0) flags[q] = e.flags;
        for (std::size_t i = 0; i < bands; ++i) {
          if (e.flags[i] & kBandFailed) {
            sq[q][m * bands + i] = std::numeric_limits<double>::quiet_NaN();
            continue;
          }
          const double norm = e.power[i] / (2.0 * e.f_w_used[i]);
          const double db = 10.0 * std::log10(norm);
          sq[q][m * bands + i] = db * db;
        }
      }
    }

    for (std::size_t q = 0; q < methods.size(); ++q) {
      ErrorReport rep;
      rep.method = methods[q];
      rep.scheme = scheme;
      rep.centers = plan.centers();
      rep.flags = flags[q];
      rep.trials = trials;
      rep.base_seed = base_seed;
      rep.f_w = config.f_w;
      rep.k_tapers = config.k_tapers;
      rep.mse_db_mean.assign(bands, std::numeric_limits<double>::quiet_NaN());
      rep.mse_db_sem.assign(bands, std::numeric_limits<double>::quiet_NaN());
      for (std::size_t i = 0; i < bands; ++i) {
        if (rep.flags[i] & kBandFailed) {
          ++rep.failed_bands;
          continue;
        }
        double mean = 0.0;
        for (std::size_t m = 0; m < trials; ++m) mean += sq[q][m * bands + i];
        mean /= static_cast<double>(trials);
        double var = 0.0;
        for (std::size_t m = 0; m < trials; ++m) {
          const double d = sq[q][m * bands + i] - mean;
          var += d * d;
        }
        var /= static_cast<double>(trials - 1);
        rep.mse_db_mean[i] = mean;
        rep.mse_db_sem[i] = std::sqrt(var / static_cast<double>(trials));
      }
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

std::vector<SpeedReport> run_speed_analysis(
    const std::vector<EstimatorMethod>& methods,
    const std::vector<SamplingScheme>& schemes, std::size_t reps,
    const SpeedConfig& config) {
  if (reps < 10) throw std::invalid_argument("run_speed_analysis: reps must be >= 10");
  using clock = std::chrono::steady_clock;
  const BenchConfig& cfg = config.bench;
  const SignalBand band(cfg.f_max);
  const BandPlan plan = make_band_plan(cfg.f_max, cfg.f_w, cfg.spacing);
  const std::string env = environment_fingerprint();

  std::vector<SpeedReport> reports;
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    const SamplingGrid grid =
        generate_grid(scheme_config(schemes[s], cfg.n_samples, Rng::substream(17, s)));
    const SignalSeries series = generate_white_noise(grid, 1.0, 99 + s);
    for (EstimatorMethod m : methods) {
      // warm-up call doubles as the batch-size probe
      const auto t0 = clock::now();
      run_cold(m, series, band, plan, cfg);
      const double per_call =
          std::max(std::chrono::duration<double>(clock::now() - t0).count(), 1e-9);
      const std::size_t batch = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::ceil(config.min_batch_seconds / per_call)));

      std::vector<double> rates;
      std::size_t calls = 0;
      const auto cell_start = clock::now();
      while (calls < reps &&
             std::chrono::duration<double>(clock::now() - cell_start).count() <
                 config.max_cell_seconds) {
        const auto b0 = clock::now();
        for (std::size_t r = 0; r < batch; ++r) {
          run_cold(m, series, band, plan, cfg);
        }
        const double dt = std::chrono::duration<double>(clock::now() - b0).count();
        rates.push_back(static_cast<double>(batch) / dt);
        calls += batch;
        if (rates.size() >= 2 && calls >= reps) break;
      }
      while (rates.size() < 2) {
        const auto b0 = clock::now();
        for (std::size_t r = 0; r < batch; ++r) {
          run_cold(m, series, band, plan, cfg);
        }
        const double dt = std::chrono::duration<double>(clock::now() - b0).count();
        rates.push_back(static_cast<double>(batch) / dt);
        calls += batch;
      }

      SpeedReport rep;
      rep.method = m;
      rep.scheme = schemes[s];
      rep.calls = calls;
      rep.batches = rates.size();
      rep.environment = env;
      rep.timestamp = timestamp_utc();
      double mean = 0.0;
      for (double r : rates) mean += r;
      mean /= static_cast<double>(rates.size());
      double var = 0.0;
      for (double r : rates) var += (r - mean) * (r - mean);
      var /= static_cast<double>(rates.size() > 1 ? rates.size() - 1 : 1);
      rep.spectra_per_second_mean = mean;
      rep.spectra_per_second_std = std::sqrt(var);
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

}  // namespace nuspectral
