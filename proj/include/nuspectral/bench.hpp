#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "nuspectral/estimators.hpp"
#include "nuspectral/grid.hpp"
#include "nuspectral/simkit.hpp"

namespace nuspectral {

/// Benchmark protocol knobs; defaults mirror the error-analysis
/// configuration (f_max = 0.5, f_w = 0.05, K = 4, band spacing f_w/5,
/// N = 50 samples per scheme).
struct BenchConfig {
  double f_max = 0.5;
  double f_w = 0.05;
  std::size_t k_tapers = 4;
  double spacing = 0.01;
  std::size_t n_samples = 50;
  double epsilon = 1e-8;
  BgAdaptiveOptions adaptive{};
};

/// Per (method, scheme) mean squared dB error against the flat unit
/// spectrum. Powers are normalized by 2*f_w_used before the dB square so
/// the flat-spectrum truth maps to 0 dB. Boundary or failed bands keep
/// their flags; summaries should exclude them.
struct ErrorReport {
  EstimatorMethod method;
  SamplingScheme scheme;
  std::vector<double> centers;
  std::vector<double> mse_db_mean;
  std::vector<double> mse_db_sem;
  std::vector<std::uint8_t> flags;
  std::size_t trials = 0;
  std::uint64_t base_seed = 0;
  double f_w = 0.0;
  std::size_t k_tapers = 0;
  std::size_t failed_bands = 0;
};

std::vector<ErrorReport> run_error_analysis(
    const std::vector<EstimatorMethod>& methods,
    const std::vector<SamplingScheme>& schemes, std::size_t trials,
    std::uint64_t base_seed, const BenchConfig& config = {});

/// Wall-clock throughput of cold spectrum estimation (tapers recomputed
/// per call). Batches are sized to at least min_batch_seconds; a warm-up
/// batch is discarded.
struct SpeedReport {
  EstimatorMethod method;
  SamplingScheme scheme;
  double spectra_per_second_mean = 0.0;
  double spectra_per_second_std = 0.0;
  std::size_t calls = 0;
  std::size_t batches = 0;
  std::string environment;
  std::string timestamp;
};

struct SpeedConfig {
  BenchConfig bench{};
  double min_batch_seconds = 0.05;
  double max_cell_seconds = 120.0;  // stop a (method, scheme) cell after this
};

std::vector<SpeedReport> run_speed_analysis(
    const std::vector<EstimatorMethod>& methods,
    const std::vector<SamplingScheme>& schemes, std::size_t reps,
    const SpeedConfig& config = {});

}  // namespace nuspectral
