#include "nuspectral/nufft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "nuspectral/errors.hpp"
#include "nuspectral/simd.hpp"

namespace nuspectral {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
// Spread width per digit of accuracy for the Gaussian kernel at
// oversampling 2, calibrated against the direct oracle (tests pin the
// epsilon * ||y||_1 bound across the accuracy lattice).
constexpr double kSpreadPerLogEps = 0.55;
constexpr std::size_t kMinSpreadWidth = 4;

bool uniform_spacing(const std::vector<double>& c) {
  if (c.size() < 2) return false;
  const double df = c[1] - c[0];
  if (!(df > 0.0)) return false;
  double max_dev = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    max_dev = std::max(max_dev, std::abs((c[i] - c[i - 1]) - df));
  }
  return max_dev <= 1e-9 * df;
}

}  // namespace

std::vector<std::complex<double>> ndft_direct(
    const SamplingGrid& grid, const std::vector<std::complex<double>>& weighted_values,
    const std::vector<double>& freq_centers) {
  const auto& t = grid.times();
  if (weighted_values.size() != t.size()) {
    throw std::invalid_argument("ndft_direct: length mismatch");
  }
  std::vector<std::complex<double>> out(freq_centers.size());
  for (std::size_t i = 0; i < freq_centers.size(); ++i) {
    const double f = freq_centers[i];
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t n = 0; n < t.size(); ++n) {
      const double ph = -kTwoPi * f * t[n];
      acc += weighted_values[n] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    out[i] = acc;
  }
  return out;
}

NufftPlan::NufftPlan(const SamplingGrid& grid, std::vector<double> freq_centers,
                     double epsilon, NufftPathPolicy policy, int oversampling)
    : times_(grid.times()),
      centers_(std::move(freq_centers)),
      epsilon_(epsilon),
      oversampling_(oversampling) {
  if (centers_.empty()) throw std::invalid_argument("NufftPlan: no frequency centers");
  if (!(epsilon_ > 0.0) || epsilon_ > 1e-2) {
    throw std::invalid_argument("NufftPlan: epsilon must be in (0, 1e-2]");
  }
  if (oversampling_ < 2) {
    throw std::invalid_argument("NufftPlan: oversampling must be >= 2");
  }
  centers_uniform_ = uniform_spacing(centers_);

  switch (policy) {
    case NufftPathPolicy::force_fast:
      if (!centers_uniform_) {
        throw std::invalid_argument(
            "NufftPlan: fast path requires uniformly spaced centers");
      }
      path_ = NufftPath::fast;
      break;
    case NufftPathPolicy::force_direct:
      path_ = NufftPath::direct;
      break;
    case NufftPathPolicy::auto_select:
    default:
      path_ = (centers_uniform_ &&
               times_.size() * centers_.size() >= kFastThreshold)
                  ? NufftPath::fast
                  : NufftPath::direct;
      break;
  }
  spread_width_ = std::max(kMinSpreadWidth,
                           static_cast<std::size_t>(
                               std::ceil(kSpreadPerLogEps * (-std::log(epsilon_)))));
  if (path_ == NufftPath::fast) build_fast_tables();
}

void NufftPlan::build_fast_tables() {
  const std::size_t n = times_.size();
  const std::size_t count = centers_.size();
  f0_ = centers_.front();
  df_ = (centers_.back() - centers_.front()) / static_cast<double>(count - 1);
  const std::size_t w = spread_width_;

  mr_ = Radix2Fft::next_power_of_two(
      std::max(static_cast<std::size_t>(oversampling_) * count, 4 * w + 4));
  const double ratio = static_cast<double>(mr_) / static_cast<double>(count);
  tau_ = kPi * static_cast<double>(w) /
         (static_cast<double>(count) * static_cast<double>(count) * ratio *
          (ratio - 0.5));
  mode_offset_ = static_cast<long>(count / 2);

  prephase_.resize(n);
  first_cell_.resize(n);
  spread_weights_.resize(n * 2 * w);
  const double fshift = f0_ + static_cast<double>(mode_offset_) * df_;
  for (std::size_t i = 0; i < n; ++i) {
    const double ph = -kTwoPi * fshift * times_[i];
    prephase_[i] = {std::cos(ph), std::sin(ph)};
    double x = std::fmod(-kTwoPi * df_ * times_[i], kTwoPi);
    if (x < 0.0) x += kTwoPi;
    const double cell = x * static_cast<double>(mr_) / kTwoPi;
    const long j0 = static_cast<long>(std::floor(cell)) - static_cast<long>(w) + 1;
    first_cell_[i] = j0;
    for (std::size_t p = 0; p < 2 * w; ++p) {
      const double xi = kTwoPi * static_cast<double>(j0 + static_cast<long>(p)) /
                        static_cast<double>(mr_);
      const double dxr = x - xi;
      spread_weights_[i * 2 * w + p] = std::exp(-dxr * dxr / (4.0 * tau_));
    }
  }

  deconv_.resize(count);
  out_bin_.resize(count);
  const double norm = std::sqrt(kPi / tau_) / static_cast<double>(mr_);
  for (std::size_t i = 0; i < count; ++i) {
    const long m = static_cast<long>(i) - mode_offset_;
    long bin = (-m) % static_cast<long>(mr_);
    if (bin < 0) bin += static_cast<long>(mr_);
    out_bin_[i] = static_cast<std::size_t>(bin);
    deconv_[i] = norm * std::exp(tau_ * static_cast<double>(m) * static_cast<double>(m));
  }
  fft_ = std::make_shared<Radix2Fft>(mr_);
}

std::vector<std::complex<double>> NufftPlan::execute_fast(
    const std::vector<std::complex<double>>& y) const {
  const std::size_t n = times_.size();
  const std::size_t w2 = 2 * spread_width_;
  const auto& K = simd::active();
  std::vector<std::complex<double>> b(mr_, {0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    const std::complex<double> z = y[i] * prephase_[i];
    long j0 = first_cell_[i] % static_cast<long>(mr_);
    if (j0 < 0) j0 += static_cast<long>(mr_);
    const std::size_t start = static_cast<std::size_t>(j0);
    const double* q = spread_weights_.data() + i * w2;
    const std::size_t run = std::min(w2, mr_ - start);
    K.spread_accum(b.data() + start, q, run, z);
    if (run < w2) K.spread_accum(b.data(), q + run, w2 - run, z);
  }
  fft_->forward(b.data());
  std::vector<std::complex<double>> out(centers_.size());
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    out[i] = deconv_[i] * b[out_bin_[i]];
  }
  return out;
}

std::vector<std::complex<double>> NufftPlan::execute(
    const std::vector<std::complex<double>>& weighted_values) const {
  if (weighted_values.size() != times_.size()) {
    throw PlanMismatch("NufftPlan: input length does not match plan grid");
  }
  if (path_ == NufftPath::fast) return execute_fast(weighted_values);
  // Direct path shares the oracle's exact summation.
  std::complex<double> acc;
  std::vector<std::complex<double>> out(centers_.size());
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const double f = centers_[i];
    acc = {0.0, 0.0};
    for (std::size_t n = 0; n < times_.size(); ++n) {
      const double ph = -kTwoPi * f * times_[n];
      acc += weighted_values[n] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    out[i] = acc;
  }
  return out;
}

std::vector<std::complex<double>> nufft_fast(
    const NufftPlan& plan, const std::vector<std::complex<double>>& weighted_values) {
  return plan.execute(weighted_values);
}

EigenCoefficients eigencoefficients(const TaperSet& tapers,
                                    const SignalSeries& series,
                                    const NufftPlan& plan) {
  const std::size_t n = series.grid.n_samples();
  if (tapers.n_samples() != n || plan.n_samples() != n) {
    throw PlanMismatch("eigencoefficients: tapers, series and plan must share one grid");
  }
  if (tapers.grid().times() != series.grid.times()) {
    throw PlanMismatch("eigencoefficients: taper grid differs from series grid");
  }
  const std::size_t kk = tapers.k_tapers();
  EigenCoefficients out;
  out.n_tapers = kk;
  out.n_bands = plan.n_centers();
  out.data.resize(kk * out.n_bands);

  std::vector<std::complex<double>> weighted(n);
  std::vector<double> wx(n);
  for (std::size_t k = 0; k < kk; ++k) {
    if (tapers.is_real()) {
      simd::active().mul_real(tapers.weights_real(k).data(), series.values.data(),
                              wx.data(), n);
      for (std::size_t i = 0; i < n; ++i) weighted[i] = {wx[i], 0.0};
    } else {
      const auto& w = tapers.weights(k);
      for (std::size_t i = 0; i < n; ++i) {
        weighted[i] = std::conj(w[i]) * series.values[i];
      }
    }
    std::vector<std::complex<double>> row = plan.execute(weighted);
    std::copy(row.begin(), row.end(), out.data.begin() + k * out.n_bands);
  }
  return out;
}

}  // namespace nuspectral
