#include "nuspectral/simd.hpp"

namespace nuspectral::simd {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double dot_self_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

std::complex<double> cdot_conj_scalar(const std::complex<double>* w,
                                      const std::complex<double>* x,
                                      std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wr = w[i].real(), wi = w[i].imag();
    const double xr = x[i].real(), xi = x[i].imag();
    re += wr * xr + wi * xi;
    im += wr * xi - wi * xr;
  }
  return {re, im};
}

std::complex<double> cdot_scalar(const std::complex<double>* w,
                                 const std::complex<double>* x, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wr = w[i].real(), wi = w[i].imag();
    const double xr = x[i].real(), xi = x[i].imag();
    re += wr * xr - wi * xi;
    im += wr * xi + wi * xr;
  }
  return {re, im};
}

std::complex<double> cdot_conj_real_scalar(const std::complex<double>* w,
                                           const double* x, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += w[i].real() * x[i];
    im -= w[i].imag() * x[i];
  }
  return {re, im};
}

double sum_abs2_scalar(const std::complex<double>* z, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
  }
  return acc;
}

void mul_real_scalar(const double* w, const double* x, double* out,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = w[i] * x[i];
}

void axpy_scalar(double* y, const double* x, std::size_t n, double a) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_cconj_scalar(std::complex<double>* y, const std::complex<double>* x,
                       std::size_t n, std::complex<double> a) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = -x[i].imag();
    y[i] += std::complex<double>(ar * xr - ai * xi, ar * xi + ai * xr);
  }
}

void spread_accum_scalar(std::complex<double>* grid, const double* q,
                         std::size_t n, std::complex<double> z) {
  for (std::size_t i = 0; i < n; ++i) grid[i] += q[i] * z;
}

}  // namespace

const Kernels& scalar() {
  static const Kernels k = {
      dot_scalar,     dot_self_scalar,       cdot_conj_scalar,
      cdot_scalar,    cdot_conj_real_scalar, sum_abs2_scalar,
      mul_real_scalar, axpy_scalar,          axpy_cconj_scalar,
      spread_accum_scalar,
  };
  return k;
}

}  // namespace nuspectral::simd
