#include "nuspectral/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace nuspectral::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double dot_self_avx2(const double* x, std::size_t n) {
  return dot_avx2(x, x, n);
}

// Shared core for the conjugated / plain complex dot products: the only
// difference is which factor picks up the sign flip.
template <bool Conj>
std::complex<double> cdot_impl(const std::complex<double>* w,
                               const std::complex<double>* x, std::size_t n) {
  const double* wp = reinterpret_cast<const double*>(w);
  const double* xp = reinterpret_cast<const double*>(x);
  const __m256d sign_odd = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  __m256d acc_a = _mm256_setzero_pd();  // wr*xr and wi*xi lanes
  __m256d acc_b = _mm256_setzero_pd();  // wr*xi and wi*xr lanes
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d wv = _mm256_loadu_pd(wp + 2 * i);
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    acc_a = _mm256_fmadd_pd(wv, xv, acc_a);
    acc_b = _mm256_fmadd_pd(wv, _mm256_permute_pd(xv, 0x5), acc_b);
  }
  // conj: re = wr*xr + wi*xi, im = wr*xi - wi*xr
  // plain: re = wr*xr - wi*xi, im = wr*xi + wi*xr
  double re, im;
  if (Conj) {
    re = hsum(acc_a);
    im = hsum(_mm256_xor_pd(acc_b, sign_odd));
  } else {
    re = hsum(_mm256_xor_pd(acc_a, sign_odd));
    im = hsum(acc_b);
  }
  for (; i < n; ++i) {
    const double wr = w[i].real(), wi = w[i].imag();
    const double xr = x[i].real(), xi = x[i].imag();
    if (Conj) {
      re += wr * xr + wi * xi;
      im += wr * xi - wi * xr;
    } else {
      re += wr * xr - wi * xi;
      im += wr * xi + wi * xr;
    }
  }
  return {re, im};
}

std::complex<double> cdot_conj_avx2(const std::complex<double>* w,
                                    const std::complex<double>* x,
                                    std::size_t n) {
  return cdot_impl<true>(w, x, n);
}

std::complex<double> cdot_avx2(const std::complex<double>* w,
                               const std::complex<double>* x, std::size_t n) {
  return cdot_impl<false>(w, x, n);
}

std::complex<double> cdot_conj_real_avx2(const std::complex<double>* w,
                                         const double* x, std::size_t n) {
  const double* wp = reinterpret_cast<const double*>(w);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d xpair = _mm_loadu_pd(x + i);
    const __m256d xv = _mm256_set_m128d(_mm_unpackhi_pd(xpair, xpair),
                                        _mm_unpacklo_pd(xpair, xpair));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(wp + 2 * i), xv, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double re = lanes[0] + lanes[2];
  double im = -(lanes[1] + lanes[3]);
  for (; i < n; ++i) {
    re += w[i].real() * x[i];
    im -= w[i].imag() * x[i];
  }
  return {re, im};
}

double sum_abs2_avx2(const std::complex<double>* z, std::size_t n) {
  const double* zp = reinterpret_cast<const double*>(z);
  return dot_avx2(zp, zp, 2 * n);
}

void mul_real_avx2(const double* w, const double* x, double* out,
                   std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i,
                     _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) out[i] = w[i] * x[i];
}

void axpy_avx2(double* y, const double* x, std::size_t n, double a) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i,
                     _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpy_cconj_avx2(std::complex<double>* y, const std::complex<double>* x,
                     std::size_t n, std::complex<double> a) {
  double* yp = reinterpret_cast<double*>(y);
  const double* xp = reinterpret_cast<const double*>(x);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  const __m256d neg_even = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // xc = conj(x); y += a*xc with (re, im) = (ar*xr - ai*xi, ar*xi + ai*xr)
    const __m256d xc = _mm256_xor_pd(_mm256_loadu_pd(xp + 2 * i), conj_mask);
    const __m256d swapped = _mm256_xor_pd(_mm256_permute_pd(xc, 0x5), neg_even);
    const __m256d t = _mm256_fmadd_pd(ar, xc, _mm256_loadu_pd(yp + 2 * i));
    _mm256_storeu_pd(yp + 2 * i, _mm256_fmadd_pd(ai, swapped, t));
  }
  const double arr = a.real(), aii = a.imag();
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = -x[i].imag();
    y[i] += std::complex<double>(arr * xr - aii * xi, arr * xi + aii * xr);
  }
}

void spread_accum_avx2(std::complex<double>* grid, const double* q,
                       std::size_t n, std::complex<double> z) {
  double* gp = reinterpret_cast<double*>(grid);
  const __m256d zv = _mm256_set_pd(z.imag(), z.real(), z.imag(), z.real());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d qpair = _mm_loadu_pd(q + i);
    const __m256d qv = _mm256_set_m128d(_mm_unpackhi_pd(qpair, qpair),
                                        _mm_unpacklo_pd(qpair, qpair));
    _mm256_storeu_pd(gp + 2 * i,
                     _mm256_fmadd_pd(qv, zv, _mm256_loadu_pd(gp + 2 * i)));
  }
  for (; i < n; ++i) grid[i] += q[i] * z;
}

}  // namespace

const Kernels* avx2_kernels_impl() {
  static const Kernels k = {
      dot_avx2,      dot_self_avx2,       cdot_conj_avx2,
      cdot_avx2,     cdot_conj_real_avx2, sum_abs2_avx2,
      mul_real_avx2, axpy_avx2,           axpy_cconj_avx2,
      spread_accum_avx2,
  };
  return &k;
}

}  // namespace nuspectral::simd

#endif  // x86_64
