#include "nuspectral/eig.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nuspectral/simd.hpp"

namespace nuspectral {

using cplx = std::complex<double>;

namespace detail {

void ql_implicit(std::vector<double>& d, std::vector<double>& e, double* z,
                 std::size_t n) {
  // Implicit-shift QL for a symmetric tridiagonal matrix, after the EISPACK
  // tql2 lineage. e[i] couples d[i] and d[i+1]; e is destroyed. If z is
  // given it must be an n x n row-major matrix; the accumulated rotations
  // turn its columns into eigenvectors.
  if (n == 0) return;
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  const std::size_t ni = n;
  // Global scale keeps deflation working in blocks whose diagonal entries
  // are near zero (absolute accuracy eps * ||T|| there, as in tql2).
  double anorm = 0.0;
  for (std::size_t i = 0; i < ni; ++i) {
    double row = std::abs(d[i]);
    if (i > 0) row += std::abs(e[i - 1]);
    if (i + 1 < ni) row += std::abs(e[i]);
    anorm = std::max(anorm, row);
  }
  for (std::size_t l = 0; l < ni; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < ni; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= DBL_EPSILON * (dd + anorm)) break;
      }
      if (m != l) {
        if (iter++ == 60) throw Error("ql_implicit: too many iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        std::size_t i = m;
        bool underflow = false;
        while (i-- > l) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z != nullptr) {
            for (std::size_t k = 0; k < ni; ++k) {
              f = z[k * ni + i + 1];
              z[k * ni + i + 1] = s * z[k * ni + i] + c * f;
              z[k * ni + i] = c * z[k * ni + i] - s * f;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

bool cholesky_lower(std::vector<double>& a, std::size_t n) {
  const auto& K = simd::active();
  for (std::size_t j = 0; j < n; ++j) {
    double sum = a[j * n + j] - K.dot_self(a.data() + j * n, j);
    if (!(sum > 0.0)) return false;
    const double diag = std::sqrt(sum);
    a[j * n + j] = diag;
    for (std::size_t i = j + 1; i < n; ++i) {
      const double s = a[i * n + j] - K.dot(a.data() + i * n, a.data() + j * n, j);
      a[i * n + j] = s / diag;
    }
  }
  // zero the upper triangle so the factor can be used verbatim
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) a[r * n + c] = 0.0;
  }
  return true;
}

}  // namespace detail

namespace {

// Solve (T - lam*I) x = b in place with partial pivoting; x holds the rhs on
// entry and the solution on exit. Near-zero pivots are replaced by pivmin so
// the solve always succeeds (inverse-iteration convention).
void solve_shifted_tridiag(const std::vector<double>& d,
                           const std::vector<double>& e, double lam,
                           std::vector<double>& x, double pivmin) {
  const std::size_t n = d.size();
  if (n == 1) {
    double p = d[0] - lam;
    if (std::abs(p) < pivmin) p = std::copysign(pivmin, p == 0.0 ? 1.0 : p);
    x[0] /= p;
    return;
  }
  std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0);
  double c0 = d[0] - lam;
  double c1 = e[0];
  double c2 = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double sub = e[i];
    const double dd = d[i + 1] - lam;
    const double sup = (i + 2 < n) ? e[i + 1] : 0.0;
    if (std::abs(sub) > std::abs(c0)) {
      // pivot on the row below
      u0[i] = sub;
      u1[i] = dd;
      u2[i] = sup;
      const double m = c0 / sub;
      std::swap(x[i], x[i + 1]);
      x[i + 1] -= m * x[i];
      c0 = c1 - m * dd;
      c1 = c2 - m * sup;
      c2 = 0.0;
    } else {
      if (std::abs(c0) < pivmin) c0 = std::copysign(pivmin, c0 == 0.0 ? 1.0 : c0);
      u0[i] = c0;
      u1[i] = c1;
      u2[i] = c2;
      const double m = sub / c0;
      x[i + 1] -= m * x[i];
      c0 = dd - m * c1;
      c1 = sup - m * c2;
      c2 = 0.0;
    }
  }
  if (std::abs(c0) < pivmin) c0 = std::copysign(pivmin, c0 == 0.0 ? 1.0 : c0);
  u0[n - 1] = c0;

  x[n - 1] /= u0[n - 1];
  if (n >= 2) x[n - 2] = (x[n - 2] - u1[n - 2] * x[n - 1]) / u0[n - 2];
  for (std::size_t i = n - 2; i-- > 0;) {
    x[i] = (x[i] - u1[i] * x[i + 1] - u2[i] * x[i + 2]) / u0[i];
  }
}

double tridiag_norm(const std::vector<double>& d, const std::vector<double>& e) {
  double a = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double row = std::abs(d[i]);
    if (i > 0) row += std::abs(e[i - 1]);
    if (i + 1 < d.size()) row += std::abs(e[i]);
    a = std::max(a, row);
  }
  return a;
}

double tridiag_residual(const std::vector<double>& d, const std::vector<double>& e,
                        double lam, const std::vector<double>& x) {
  const std::size_t n = d.size();
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = (d[i] - lam) * x[i];
    if (i > 0) t += e[i - 1] * x[i - 1];
    if (i + 1 < n) t += e[i] * x[i + 1];
    r2 += t * t;
  }
  return std::sqrt(r2);
}

// Deterministic fallback start vector.
void pseudo_random_fill(std::vector<double>& x, std::uint64_t seed) {
  std::uint64_t s = seed * 0x9E3779B97F4A7C15ull + 0xBF58476D1CE4E5B9ull;
  for (auto& v : x) {
    s ^= s >> 30;
    s *= 0xBF58476D1CE4E5B9ull;
    s ^= s >> 27;
    s *= 0x94D049BB133111EBull;
    s ^= s >> 31;
    v = static_cast<double>(s >> 11) / 9007199254740992.0 - 0.5;
  }
}

void normalize_l2(std::vector<double>& x) {
  const double nrm = std::sqrt(simd::active().dot_self(x.data(), x.size()));
  if (nrm > 0.0) {
    for (auto& v : x) v /= nrm;
  }
}

// Inverse iteration for the top eigenvectors of a tridiagonal; vecs[j] must
// be preallocated length n. Returns false when residual targets cannot be
// met (caller falls back to full QL accumulation).
bool tridiag_vectors_inverse_iteration(const std::vector<double>& d,
                                       const std::vector<double>& e,
                                       const std::vector<double>& values,
                                       std::vector<std::vector<double>>& vecs) {
  const std::size_t n = d.size();
  const std::size_t k = values.size();
  const double anorm = std::max(tridiag_norm(d, e), DBL_MIN);
  const double pivmin = anorm * DBL_EPSILON * 1e-3;
  const double cluster_tol = anorm * 1e-8;
  const double accept = anorm * 1e-11;
  const double require = anorm * 1e-10;
  std::vector<char> start_used(n, 0);
  for (std::size_t j = 0; j < k; ++j) {
    const double lam = values[j];
    // Start from the coordinate whose diagonal is closest to lam
    // (exact for diagonal matrices, a good seed otherwise).
    std::size_t best = n;
    double best_gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (start_used[i]) continue;
      const double gap = std::abs(d[i] - lam);
      if (best == n || gap < best_gap) {
        best = i;
        best_gap = gap;
      }
    }
    if (best == n) best = j % n;
    start_used[best] = 1;

    std::vector<double>& x = vecs[j];
    x.assign(n, 0.0);
    x[best] = 1.0;
    // Perturb within clusters so repeated shifts do not share a solve.
    std::size_t cluster_rank = 0;
    for (std::size_t p = 0; p < j; ++p) {
      if (std::abs(values[p] - lam) <= cluster_tol) ++cluster_rank;
    }
    const double lam_solve = lam + anorm * DBL_EPSILON * 10.0 *
                                       static_cast<double>(cluster_rank + 1);
    double resid = HUGE_VAL;
    for (int it = 0; it < 6; ++it) {
      solve_shifted_tridiag(d, e, lam_solve, x, pivmin);
      normalize_l2(x);
      // Re-orthogonalize against earlier members of the same cluster.
      for (std::size_t p = 0; p < j; ++p) {
        if (std::abs(values[p] - lam) > cluster_tol) continue;
        const double proj = simd::active().dot(x.data(), vecs[p].data(), n);
        simd::active().axpy(x.data(), vecs[p].data(), n, -proj);
      }
      normalize_l2(x);
      const double nrm = std::sqrt(simd::active().dot_self(x.data(), n));
      if (!(nrm > 0.5)) {
        pseudo_random_fill(x, j * 1000003ull + it);
        normalize_l2(x);
        continue;
      }
      resid = tridiag_residual(d, e, lam, x);
      if (resid <= accept) break;
    }
    if (!(resid <= require)) return false;
  }
  return true;
}

void canonical_sign(std::vector<double>& v) {
  std::size_t imax = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  }
  if (v[imax] < 0.0) {
    for (auto& x : v) x = -x;
  }
}

void canonical_phase(std::vector<cplx>& v) {
  std::size_t imax = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::norm(v[i]) > std::norm(v[imax])) imax = i;
  }
  const double mag = std::abs(v[imax]);
  if (mag > 0.0) {
    const cplx phase = std::conj(v[imax]) / mag;
    for (auto& x : v) x *= phase;
  }
}

std::vector<std::size_t> descending_order(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

// ---- complex Hermitian dense solve --------------------------------------

// Householder reduction of a full-storage Hermitian matrix to a real
// symmetric tridiagonal T = Q^H A Q. Reflectors H_k = I - tau_k v_k v_k^H
// are stored with v in the strictly-sub-subdiagonal part of column k
// (v[k+1] = 1 implicit) and Q = H_0 H_1 ... H_{n-2}.
void hermitian_tridiagonalize(std::vector<cplx>& a, std::size_t n,
                              std::vector<cplx>& tau, std::vector<double>& d,
                              std::vector<double>& e) {
  tau.assign(n >= 1 ? n - 1 : 0, cplx(0.0, 0.0));
  d.resize(n);
  e.assign(n >= 1 ? n - 1 : 0, 0.0);
  const auto& K = simd::active();
  std::vector<cplx> v(n), p(n), w(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t lo = k + 1;
    const std::size_t m = n - lo;
    cplx alpha = a[lo * n + k];
    double xnorm2 = 0.0;
    for (std::size_t j = lo + 1; j < n; ++j) xnorm2 += std::norm(a[j * n + k]);
    if (xnorm2 == 0.0 && alpha.imag() == 0.0) {
      tau[k] = cplx(0.0, 0.0);
      e[k] = alpha.real();
      continue;
    }
    const double total = std::sqrt(std::norm(alpha) + xnorm2);
    const double beta = alpha.real() >= 0.0 ? -total : total;
    const cplx t((beta - alpha.real()) / beta, -alpha.imag() / beta);
    const cplx scale = 1.0 / (alpha - beta);
    v[lo] = cplx(1.0, 0.0);
    for (std::size_t j = lo + 1; j < n; ++j) v[j] = scale * a[j * n + k];
    tau[k] = t;
    e[k] = beta;

    // p = tau * A22 * v
    for (std::size_t r = lo; r < n; ++r) {
      p[r] = t * K.cdot(a.data() + r * n + lo, v.data() + lo, m);
    }
    // w = p - (tau/2) (p^H v) v   [sigma = |tau|^2 (v^H A v)/2 folded in]
    cplx phv(0.0, 0.0);
    for (std::size_t r = lo; r < n; ++r) phv += std::conj(p[r]) * v[r];
    const cplx sigma = 0.5 * t * phv;
    for (std::size_t r = lo; r < n; ++r) w[r] = p[r] - sigma * v[r];
    // A22 := A22 - v w^H - w v^H
    for (std::size_t r = lo; r < n; ++r) {
      K.axpy_cconj(a.data() + r * n + lo, w.data() + lo, m, -v[r]);
      K.axpy_cconj(a.data() + r * n + lo, v.data() + lo, m, -w[r]);
    }
    // store the reflector below the subdiagonal and pin the real beta
    a[lo * n + k] = cplx(beta, 0.0);
    for (std::size_t j = lo + 1; j < n; ++j) a[j * n + k] = v[j];
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i].real();
}

// y = Q z for a real tridiagonal eigenvector z.
std::vector<cplx> hermitian_backtransform(const std::vector<cplx>& a,
                                          std::size_t n,
                                          const std::vector<cplx>& tau,
                                          const std::vector<double>& z) {
  std::vector<cplx> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = cplx(z[i], 0.0);
  if (n < 2) return y;
  for (std::size_t k = n - 1; k-- > 0;) {
    const cplx t = tau[k];
    if (t == cplx(0.0, 0.0)) continue;
    const std::size_t lo = k + 1;
    // s = v^H y over rows lo..n-1 with v[lo] = 1
    cplx s = y[lo];
    for (std::size_t j = lo + 1; j < n; ++j) s += std::conj(a[j * n + k]) * y[j];
    s *= t;
    y[lo] -= s;
    for (std::size_t j = lo + 1; j < n; ++j) y[j] -= s * a[j * n + k];
  }
  return y;
}

struct HermitianEigenResult {
  std::vector<double> values;  // descending
  std::vector<std::vector<cplx>> vectors;
};

// Top k eigenpairs of a full-storage Hermitian matrix (destroys a).
HermitianEigenResult hermitian_eigen_dense(std::vector<cplx>& a, std::size_t n,
                                           std::size_t k, bool want_vectors) {
  HermitianEigenResult out;
  std::vector<cplx> tau;
  std::vector<double> d, e;
  hermitian_tridiagonalize(a, n, tau, d, e);

  std::vector<double> dv = d;
  std::vector<double> ev = e;
  detail::ql_implicit(dv, ev, nullptr, n);
  const auto order = descending_order(dv);
  const std::size_t kk = std::min(k, n);
  out.values.resize(kk);
  for (std::size_t j = 0; j < kk; ++j) out.values[j] = dv[order[j]];
  if (!want_vectors) return out;

  std::vector<std::vector<double>> zvecs(kk, std::vector<double>(n));
  bool ok = tridiag_vectors_inverse_iteration(d, e, out.values, zvecs);
  if (!ok) {
    // Robust path: accumulate the full rotation product.
    std::vector<double> dz = d;
    std::vector<double> ez = e;
    std::vector<double> zfull(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) zfull[i * n + i] = 1.0;
    detail::ql_implicit(dz, ez, zfull.data(), n);
    const auto order2 = descending_order(dz);
    for (std::size_t j = 0; j < kk; ++j) {
      out.values[j] = dz[order2[j]];
      for (std::size_t r = 0; r < n; ++r) zvecs[j][r] = zfull[r * n + order2[j]];
    }
  }
  out.vectors.resize(kk);
  for (std::size_t j = 0; j < kk; ++j) {
    out.vectors[j] = hermitian_backtransform(a, n, tau, zvecs[j]);
  }
  return out;
}

// Forward substitution rows: B <- L^{-1} B for complex row-major B.
void forward_subst_rows(const std::vector<double>& L, std::vector<cplx>& B,
                        std::size_t n) {
  const auto& K = simd::active();
  for (std::size_t r = 0; r < n; ++r) {
    double* br = reinterpret_cast<double*>(B.data() + r * n);
    for (std::size_t j = 0; j < r; ++j) {
      const double l = L[r * n + j];
      if (l != 0.0) {
        K.axpy(br, reinterpret_cast<const double*>(B.data() + j * n), 2 * n, -l);
      }
    }
    const double inv = 1.0 / L[r * n + r];
    for (std::size_t c = 0; c < 2 * n; ++c) br[c] *= inv;
  }
}

void hermitian_transpose_inplace(std::vector<cplx>& B, std::size_t n) {
  for (std::size_t r = 0; r < n; ++r) {
    B[r * n + r] = std::conj(B[r * n + r]);
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx t = std::conj(B[r * n + c]);
      B[r * n + c] = std::conj(B[c * n + r]);
      B[c * n + r] = t;
    }
  }
}

// Solve L^T w = y for complex y (L real lower-triangular).
std::vector<cplx> back_subst_lt(const std::vector<double>& L,
                                const std::vector<cplx>& y, std::size_t n) {
  std::vector<cplx> w(y);
  for (std::size_t r = n; r-- > 0;) {
    cplx s = w[r];
    for (std::size_t j = r + 1; j < n; ++j) s -= L[j * n + r] * w[j];
    w[r] = s / L[r * n + r];
  }
  return w;
}

double fro_norm(const KernelMatrix& A) {
  const std::size_t n = A.n();
  double s = 0.0;
  s += simd::active().dot_self(A.re_data(), n * n);
  if (!A.is_real()) s += simd::active().dot_self(A.im_data(), n * n);
  return std::sqrt(s);
}

struct CholFactor {
  std::vector<double> L;
  double ridge = 0.0;
};

CholFactor cholesky_with_ridge(const KernelMatrix& M,
                               const GeneralizedEigenOptions& opts) {
  const std::size_t n = M.n();
  const double unit = M.trace() / static_cast<double>(n);
  const double factors[2] = {opts.ridge_first, opts.ridge_retry};
  for (double f : factors) {
    CholFactor out;
    out.L.assign(M.re_data(), M.re_data() + n * n);
    out.ridge = f * unit;
    for (std::size_t i = 0; i < n; ++i) out.L[i * n + i] += out.ridge;
    if (detail::cholesky_lower(out.L, n)) return out;
  }
  throw ConditioningError(
      "generalized_hermitian_eigen: metric matrix not positive definite "
      "after ridge regularization");
}

void validate_pencil_inputs(const KernelMatrix& A, const KernelMatrix& M,
                            std::size_t k_top) {
  if (A.n() != M.n()) {
    throw std::invalid_argument("generalized_hermitian_eigen: size mismatch");
  }
  if (!M.is_real()) {
    throw std::invalid_argument(
        "generalized_hermitian_eigen: metric must be the real signal-band kernel");
  }
  if (k_top == 0) {
    throw std::invalid_argument("generalized_hermitian_eigen: k_top must be >= 1");
  }
}

std::vector<cplx> reduced_matrix(const KernelMatrix& A, const CholFactor& chol) {
  const std::size_t n = A.n();
  std::vector<cplx> C(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      C[r * n + c] = cplx(A.re(r, c), A.im(r, c));
    }
  }
  forward_subst_rows(chol.L, C, n);
  hermitian_transpose_inplace(C, n);
  forward_subst_rows(chol.L, C, n);
  // enforce Hermitian symmetry lost to roundoff
  for (std::size_t r = 0; r < n; ++r) {
    C[r * n + r] = cplx(C[r * n + r].real(), 0.0);
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx avg = 0.5 * (C[r * n + c] + std::conj(C[c * n + r]));
      C[r * n + c] = avg;
      C[c * n + r] = std::conj(avg);
    }
  }
  return C;
}

void enforce_spectral_range(std::vector<double>& values) {
  for (double& v : values) {
    if (v < -1e-6 || v > 1.0 + 1e-6) {
      throw SpectralRangeError(
          "generalized eigenvalue outside [0,1] beyond tolerance: " +
          std::to_string(v));
    }
    v = std::min(std::max(v, 0.0), 1.0);
  }
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& offdiag) {
  const std::size_t n = diag.size();
  if (n == 0) throw std::invalid_argument("tridiagonal_eigenvalues: empty matrix");
  if (offdiag.size() + 1 != n) {
    throw std::invalid_argument("tridiagonal_eigenvalues: offdiag length must be n-1");
  }
  for (double v : diag) {
    if (!std::isfinite(v)) throw std::invalid_argument("tridiagonal: non-finite input");
  }
  for (double v : offdiag) {
    if (!std::isfinite(v)) throw std::invalid_argument("tridiagonal: non-finite input");
  }
  std::vector<double> d = diag;
  std::vector<double> e = offdiag;
  detail::ql_implicit(d, e, nullptr, n);
  std::sort(d.begin(), d.end(), std::greater<double>());
  return d;
}

EigenPairs tridiagonal_eigen(const std::vector<double>& diag,
                             const std::vector<double>& offdiag,
                             std::size_t k_top) {
  const std::size_t n = diag.size();
  if (k_top == 0 || k_top > n) {
    throw std::invalid_argument("tridiagonal_eigen: k_top out of range");
  }
  std::vector<double> all = tridiagonal_eigenvalues(diag, offdiag);
  std::vector<double> values(all.begin(), all.begin() + k_top);

  std::vector<std::vector<double>> zvecs(k_top, std::vector<double>(n));
  bool ok = tridiag_vectors_inverse_iteration(diag, offdiag, values, zvecs);
  if (!ok) {
    std::vector<double> d = diag;
    std::vector<double> e = offdiag;
    std::vector<double> z(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
    detail::ql_implicit(d, e, z.data(), n);
    const auto order = descending_order(d);
    for (std::size_t j = 0; j < k_top; ++j) {
      values[j] = d[order[j]];
      for (std::size_t r = 0; r < n; ++r) zvecs[j][r] = z[r * n + order[j]];
    }
  }

  EigenPairs out;
  out.metric = EigenMetric::identity;
  out.values = values;
  out.vectors.resize(k_top);
  out.residuals.resize(k_top);
  const double anorm = std::max(tridiag_norm(diag, offdiag), DBL_MIN);
  for (std::size_t j = 0; j < k_top; ++j) {
    canonical_sign(zvecs[j]);
    out.residuals[j] = tridiag_residual(diag, offdiag, values[j], zvecs[j]) / anorm;
    out.vectors[j].resize(n);
    for (std::size_t r = 0; r < n; ++r) out.vectors[j][r] = cplx(zvecs[j][r], 0.0);
  }
  return out;
}

EigenPairs generalized_hermitian_eigen(const KernelMatrix& A,
                                       const KernelMatrix& M,
                                       std::size_t k_top,
                                       const GeneralizedEigenOptions& opts) {
  validate_pencil_inputs(A, M, k_top);
  const std::size_t n = A.n();
  const std::size_t k = std::min(k_top, n);
  const CholFactor chol = cholesky_with_ridge(M, opts);
  std::vector<cplx> C = reduced_matrix(A, chol);
  HermitianEigenResult dense = hermitian_eigen_dense(C, n, k, opts.want_vectors);

  EigenPairs out;
  out.metric = EigenMetric::rb_metric;
  out.values = dense.values;
  enforce_spectral_range(out.values);

  if (opts.want_vectors) {
    out.vectors.resize(k);
    out.residuals.resize(k);
    const double anorm = fro_norm(A);
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<cplx> w = back_subst_lt(chol.L, dense.vectors[j], n);
      const double metric_norm = M.quadratic_form(w);
      if (metric_norm > 0.0) {
        const double inv = 1.0 / std::sqrt(metric_norm);
        for (auto& x : w) x *= inv;
      }
      canonical_phase(w);
      // residual ||A w - lambda M w|| / (||A||_F ||w||), unclamped value
      const double lam = dense.values[j];
      double r2 = 0.0;
      double w2 = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        cplx aw(0.0, 0.0), mw(0.0, 0.0);
        for (std::size_t c = 0; c < n; ++c) {
          aw += A.at(r, c) * w[c];
          mw += M.re(r, c) * w[c];
        }
        const cplx res = aw - lam * mw;
        r2 += std::norm(res);
        w2 += std::norm(w[r]);
      }
      out.residuals[j] = std::sqrt(r2) / (anorm * std::sqrt(w2));
      out.vectors[j] = std::move(w);
    }
  }
  return out;
}

std::vector<double> generalized_hermitian_eigenvalues(
    const KernelMatrix& A, const KernelMatrix& M, std::size_t k_top,
    const GeneralizedEigenOptions& opts) {
  GeneralizedEigenOptions o = opts;
  o.want_vectors = false;
  return generalized_hermitian_eigen(A, M, k_top, o).values;
}

// ---- cubic spline ---------------------------------------------------------

CubicSpline::CubicSpline(std::vector<double> x_knots, std::vector<double> y_knots)
    : x_(std::move(x_knots)), y_(std::move(y_knots)) {
  const std::size_t n = x_.size();
  if (n < 4) throw std::invalid_argument("CubicSpline: need at least 4 knots");
  if (y_.size() != n) throw std::invalid_argument("CubicSpline: size mismatch");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw std::invalid_argument("CubicSpline: knots must be strictly increasing");
    }
  }
  // Solve for second derivatives M with not-a-knot end conditions:
  // continuity of the third derivative at the first and last interior knots
  // eliminates M[0] and M[n-1] from the standard moment equations.
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

  const std::size_t m = n - 2;  // unknowns M[1..n-2]
  std::vector<double> sub(m, 0.0), dia(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t r = i - 1;
    sub[r] = h[i - 1] / 6.0;
    dia[r] = (h[i - 1] + h[i]) / 3.0;
    sup[r] = h[i] / 6.0;
    rhs[r] = (y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1];
  }
  // not-a-knot left: M0 = M1 (1 + h0/h1) - M2 (h0/h1)
  {
    const double r01 = h[0] / h[1];
    dia[0] += sub[0] * (1.0 + r01);
    sup[0] -= sub[0] * r01;
    sub[0] = 0.0;
  }
  // not-a-knot right: M[n-1] = M[n-2] (1 + h[n-2]/h[n-3]) - M[n-3] (h[n-2]/h[n-3])
  {
    const double rr = h[n - 2] / h[n - 3];
    dia[m - 1] += sup[m - 1] * (1.0 + rr);
    sub[m - 1] -= sup[m - 1] * rr;
    sup[m - 1] = 0.0;
  }
  // Thomas algorithm
  for (std::size_t r = 1; r < m; ++r) {
    const double w = sub[r] / dia[r - 1];
    dia[r] -= w * sup[r - 1];
    rhs[r] -= w * rhs[r - 1];
  }
  std::vector<double> mm(m);
  mm[m - 1] = rhs[m - 1] / dia[m - 1];
  for (std::size_t r = m - 1; r-- > 0;) {
    mm[r] = (rhs[r] - sup[r] * mm[r + 1]) / dia[r];
  }
  m_.resize(n);
  for (std::size_t i = 0; i < m; ++i) m_[i + 1] = mm[i];
  m_[0] = m_[1] * (1.0 + h[0] / h[1]) - m_[2] * (h[0] / h[1]);
  m_[n - 1] = m_[n - 2] * (1.0 + h[n - 2] / h[n - 3]) - m_[n - 3] * (h[n - 2] / h[n - 3]);
}

double CubicSpline::operator()(double x) const {
  const std::size_t n = x_.size();
  const double guard_lo = 0.5 * (x_[1] - x_[0]);
  const double guard_hi = 0.5 * (x_[n - 1] - x_[n - 2]);
  if (x < x_.front() - guard_lo || x > x_.back() + guard_hi) {
    throw ExtrapolationError("CubicSpline: evaluation outside knot span guard");
  }
  const double xc = std::min(std::max(x, x_.front()), x_.back());
  // locate the interval [x_i, x_{i+1}]
  std::size_t i = static_cast<std::size_t>(
      std::upper_bound(x_.begin(), x_.end(), xc) - x_.begin());
  if (i > 0) --i;
  if (i + 1 >= n) i = n - 2;
  const double hl = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - xc) / hl;
  const double b = (xc - x_[i]) / hl;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (hl * hl) / 6.0;
}

CubicSpline cubic_spline(std::vector<double> x_knots, std::vector<double> y_knots) {
  return CubicSpline(std::move(x_knots), std::move(y_knots));
}

}  // namespace nuspectral
