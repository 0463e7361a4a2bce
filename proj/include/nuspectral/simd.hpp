#pragma once

// Runtime-dispatched SIMD kernels for the data-parallel inner loops:
// tapered inner products, Hermitian-reduction row operations, power
// accumulation and Gaussian-gridding spread accumulation. Every kernel
// has a scalar reference implementation; an AVX2/FMA variant is selected
// at startup when the CPU supports it. The two implementations are
// equivalence-tested against each other (see tests/test_simd.cpp).

#include <complex>
#include <cstddef>
#include <string>

namespace nuspectral::simd {

struct Kernels {
  // sum_i x[i]*y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i x[i]*x[i]
  double (*dot_self)(const double* x, std::size_t n);
  // sum_i conj(w[i]) * x[i], interleaved complex
  std::complex<double> (*cdot_conj)(const std::complex<double>* w,
                                    const std::complex<double>* x,
                                    std::size_t n);
  // sum_i w[i] * x[i], no conjugation
  std::complex<double> (*cdot)(const std::complex<double>* w,
                               const std::complex<double>* x, std::size_t n);
  // sum_i conj(w[i]) * x[i] with real x
  std::complex<double> (*cdot_conj_real)(const std::complex<double>* w,
                                         const double* x, std::size_t n);
  // sum_i |z[i]|^2
  double (*sum_abs2)(const std::complex<double>* z, std::size_t n);
  // out[i] = w[i]*x[i]
  void (*mul_real)(const double* w, const double* x, double* out,
                   std::size_t n);
  // y[i] += a*x[i]
  void (*axpy)(double* y, const double* x, std::size_t n, double a);
  // y[i] += a*conj(x[i]), complex a
  void (*axpy_cconj)(std::complex<double>* y, const std::complex<double>* x,
                     std::size_t n, std::complex<double> a);
  // grid[i] += q[i]*z for complex z over a contiguous run (no wrap)
  void (*spread_accum)(std::complex<double>* grid, const double* q,
                       std::size_t n, std::complex<double> z);
};

/// Kernel table active for this process (AVX2 when available, else scalar).
const Kernels& active();

/// Scalar reference kernels, always available.
const Kernels& scalar();

/// AVX2 kernels, or nullptr when unsupported by the build or the CPU.
const Kernels* avx2();

/// Human-readable description of the selected implementation.
std::string active_name();

}  // namespace nuspectral::simd
