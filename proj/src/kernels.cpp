#include "nuspectral/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "nuspectral/simd.hpp"

namespace nuspectral {

namespace {

constexpr double kPi = 3.14159265358979323846;

// sin(2*pi*fw*d)/(pi*d) with the analytic limit 2*fw at (near-)zero lag.
inline double band_sinc(double d, double fw, double zero_lag_tol) {
  if (std::abs(d) < zero_lag_tol) return 2.0 * fw;
  return std::sin(2.0 * kPi * fw * d) / (kPi * d);
}

}  // namespace

KernelMatrix::KernelMatrix(std::size_t n, bool is_real, std::string band_tag)
    : n_(n), is_real_(is_real), band_tag_(std::move(band_tag)), re_(n * n, 0.0) {
  if (!is_real_) im_.assign(n * n, 0.0);
}

double KernelMatrix::quadratic_form(const std::vector<double>& w) const {
  if (w.size() != n_) throw std::invalid_argument("quadratic_form: size mismatch");
  if (!is_real_) throw std::invalid_argument("quadratic_form: complex kernel, real vector");
  const auto& k = simd::active();
  double acc = 0.0;
  for (std::size_t r = 0; r < n_; ++r) {
    acc += w[r] * k.dot(re_.data() + r * n_, w.data(), n_);
  }
  return acc;
}

double KernelMatrix::quadratic_form(const std::vector<std::complex<double>>& w) const {
  if (w.size() != n_) throw std::invalid_argument("quadratic_form: size mismatch");
  const auto& k = simd::active();
  // w^* M w = sum_r conj(w_r) * (M w)_r; only the real part survives.
  double acc = 0.0;
  std::vector<double> wr(n_), wi(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    wr[i] = w[i].real();
    wi[i] = w[i].imag();
  }
  for (std::size_t r = 0; r < n_; ++r) {
    const double* mre = re_.data() + r * n_;
    const double rowr_wr = k.dot(mre, wr.data(), n_);
    const double rowr_wi = k.dot(mre, wi.data(), n_);
    double row_re = rowr_wr;
    double row_im = rowr_wi;
    if (!is_real_) {
      const double* mim = im_.data() + r * n_;
      row_re -= k.dot(mim, wi.data(), n_);
      row_im += k.dot(mim, wr.data(), n_);
    }
    acc += wr[r] * row_re + wi[r] * row_im;
  }
  return acc;
}

double KernelMatrix::bilinear_form(const std::vector<double>& w,
                                   const std::vector<double>& v) const {
  if (w.size() != n_ || v.size() != n_) {
    throw std::invalid_argument("bilinear_form: size mismatch");
  }
  if (!is_real_) throw std::invalid_argument("bilinear_form: complex kernel, real vectors");
  const auto& k = simd::active();
  double acc = 0.0;
  for (std::size_t r = 0; r < n_; ++r) {
    acc += w[r] * k.dot(re_.data() + r * n_, v.data(), n_);
  }
  return acc;
}

std::complex<double> KernelMatrix::bilinear_form(
    const std::vector<std::complex<double>>& w,
    const std::vector<std::complex<double>>& v) const {
  if (w.size() != n_ || v.size() != n_) {
    throw std::invalid_argument("bilinear_form: size mismatch");
  }
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t r = 0; r < n_; ++r) {
    std::complex<double> row{0.0, 0.0};
    for (std::size_t c = 0; c < n_; ++c) row += at(r, c) * v[c];
    acc += std::conj(w[r]) * row;
  }
  return acc;
}

double KernelMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += re_[i * n_ + i];
  return t;
}

KernelMatrix signal_band_kernel(const SamplingGrid& grid, const SignalBand& band) {
  const auto& t = grid.times();
  const std::size_t n = t.size();
  const double tol = 1e-12 * grid.mean_dt();
  KernelMatrix m(n, true, "B");
  double* re = m.re_data();
  for (std::size_t r = 0; r < n; ++r) {
    re[r * n + r] = 2.0 * band.f_max;
    for (std::size_t c = r + 1; c < n; ++c) {
      const double v = band_sinc(t[r] - t[c], band.f_max, tol);
      re[r * n + c] = v;
      re[c * n + r] = v;
    }
  }
  return m;
}

KernelMatrix analysis_band_kernel(const SamplingGrid& grid, const AnalysisBand& band) {
  const auto& t = grid.times();
  const std::size_t n = t.size();
  const double tol = 1e-12 * grid.mean_dt();
  if (band.f_center == 0.0) {
    KernelMatrix m(n, true, "A0");
    double* re = m.re_data();
    for (std::size_t r = 0; r < n; ++r) {
      re[r * n + r] = 2.0 * band.half_width;
      for (std::size_t c = r + 1; c < n; ++c) {
        const double v = band_sinc(t[r] - t[c], band.half_width, tol);
        re[r * n + c] = v;
        re[c * n + r] = v;
      }
    }
    return m;
  }
  KernelMatrix m(n, false, "A");
  double* re = m.re_data();
  double* im = m.im_data();
  for (std::size_t r = 0; r < n; ++r) {
    re[r * n + r] = 2.0 * band.half_width;
    im[r * n + r] = 0.0;
    for (std::size_t c = r + 1; c < n; ++c) {
      const double d = t[r] - t[c];
      const double env = band_sinc(d, band.half_width, tol);
      const double ph = 2.0 * kPi * band.f_center * d;
      const double vr = env * std::cos(ph);
      const double vi = env * std::sin(ph);
      re[r * n + c] = vr;
      im[r * n + c] = vi;
      re[c * n + r] = vr;
      im[c * n + r] = -vi;
    }
  }
  return m;
}

std::vector<std::complex<double>> shift_phases(const SamplingGrid& grid, double f_c) {
  const auto& t = grid.times();
  std::vector<std::complex<double>> e(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double ph = 2.0 * kPi * f_c * t[i];
    e[i] = {std::cos(ph), std::sin(ph)};
  }
  return e;
}

}  // namespace nuspectral
