#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nuspectral/nufft.hpp"

namespace oracles {

namespace {

constexpr double kPi = 3.14159265358979323846;

cplx integrand(double dt, double f) {
  const double ph = 2.0 * kPi * f * dt;
  return {std::cos(ph), std::sin(ph)};
}

cplx simpson(double a, double b, cplx fa, cplx fm, cplx fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

cplx adaptive(double dt, double a, double b, cplx fa, cplx fm, cplx fb,
              cplx whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const cplx flm = integrand(dt, lm);
  const cplx frm = integrand(dt, rm);
  const cplx left = simpson(a, m, fa, flm, fm);
  const cplx right = simpson(m, b, fm, frm, fb);
  const cplx delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive(dt, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive(dt, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

cplx band_integral(double dt, double f_lo, double f_hi, double tol) {
  const cplx fa = integrand(dt, f_lo);
  const cplx fb = integrand(dt, f_hi);
  const cplx fm = integrand(dt, 0.5 * (f_lo + f_hi));
  const cplx whole = simpson(f_lo, f_hi, fa, fm, fb);
  return adaptive(dt, f_lo, f_hi, fa, fm, fb, whole, tol, 40);
}

JacobiResult jacobi_eigen(std::vector<cplx> a, std::size_t n) {
  // Cyclic Jacobi with complex rotations annihilating a[p*n+q].
  std::vector<std::vector<cplx>> v(n, std::vector<cplx>(n, {0.0, 0.0}));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a[p * n + q]);
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const double theta_phase = std::arg(apq);
        const double h = std::abs(apq);
        const double diff = aqq - app;
        const double t2 = 0.5 * std::atan2(2.0 * h, diff);
        const double c = std::cos(t2);
        const double s = std::sin(t2);
        const cplx e_neg(std::cos(theta_phase), -std::sin(theta_phase));
        const cplx e_pos = std::conj(e_neg);
        // columns p, q of A
        for (std::size_t r = 0; r < n; ++r) {
          const cplx arp = a[r * n + p];
          const cplx arq = a[r * n + q];
          a[r * n + p] = c * arp - s * (e_neg * arq);
          a[r * n + q] = s * (e_pos * arp) + c * arq;
        }
        // rows p, q of A
        for (std::size_t col = 0; col < n; ++col) {
          const cplx apc = a[p * n + col];
          const cplx aqc = a[q * n + col];
          a[p * n + col] = c * apc - s * (e_pos * aqc);
          a[q * n + col] = s * (e_neg * apc) + c * aqc;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const cplx vrp = v[r][p];
          const cplx vrq = v[r][q];
          v[r][p] = c * vrp - s * (e_neg * vrq);
          v[r][q] = s * (e_pos * vrp) + c * vrq;
        }
      }
    }
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x].real() > a[y * n + y].real();
  });
  JacobiResult out;
  out.values.resize(n);
  out.vectors.resize(n, std::vector<cplx>(n));
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a[idx[j] * n + idx[j]].real();
    for (std::size_t r = 0; r < n; ++r) out.vectors[j][r] = v[r][idx[j]];
  }
  return out;
}

std::vector<double> jacobi_eigenvalues(std::vector<cplx> a, std::size_t n) {
  return jacobi_eigen(std::move(a), n).values;
}

std::vector<double> generalized_eigenvalues_oracle(const std::vector<cplx>& a,
                                                   const std::vector<double>& m,
                                                   std::size_t n) {
  // Plain textbook Cholesky (no pivoting, no ridge).
  std::vector<double> L(m);
  for (std::size_t j = 0; j < n; ++j) {
    double s = L[j * n + j];
    for (std::size_t k = 0; k < j; ++k) s -= L[j * n + k] * L[j * n + k];
    if (!(s > 0.0)) throw std::runtime_error("oracle cholesky failed");
    L[j * n + j] = std::sqrt(s);
    for (std::size_t i = j + 1; i < n; ++i) {
      double t = L[i * n + j];
      for (std::size_t k = 0; k < j; ++k) t -= L[i * n + k] * L[j * n + k];
      L[i * n + j] = t / L[j * n + j];
    }
  }
  std::vector<cplx> c(a);
  // rows: C <- L^{-1} C
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < r; ++j) {
      const double l = L[r * n + j];
      for (std::size_t col = 0; col < n; ++col) c[r * n + col] -= l * c[j * n + col];
    }
    for (std::size_t col = 0; col < n; ++col) c[r * n + col] /= L[r * n + r];
  }
  // columns: C <- C L^{-T}
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t j = 0; j < col; ++j) {
      const double l = L[col * n + j];
      for (std::size_t r = 0; r < n; ++r) c[r * n + col] -= l * c[r * n + j];
    }
    for (std::size_t r = 0; r < n; ++r) c[r * n + col] /= L[col * n + col];
  }
  return jacobi_eigenvalues(std::move(c), n);
}

namespace {

struct BetaSimpson {
  double a_, b_;
  double f(double t) const {
    return std::pow(t, a_ - 1.0) * std::pow(1.0 - t, b_ - 1.0);
  }
  double simp(double x0, double x1, double f0, double fm, double f1) const {
    return (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
  }
  double go(double x0, double x1, double f0, double fm, double f1, double whole,
            double tol, int depth) const {
    const double m = 0.5 * (x0 + x1);
    const double lm = 0.5 * (x0 + m);
    const double rm = 0.5 * (m + x1);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simp(x0, m, f0, flm, fm);
    const double right = simp(m, x1, fm, frm, f1);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
      return left + right + delta / 15.0;
    }
    return go(x0, m, f0, flm, fm, left, tol / 2.0, depth - 1) +
           go(m, x1, fm, frm, f1, right, tol / 2.0, depth - 1);
  }
  double integral(double lo, double hi) const {
    const double f0 = f(lo);
    const double f1 = f(hi);
    const double fm = f(0.5 * (lo + hi));
    return go(lo, hi, f0, fm, f1, simp(lo, hi, f0, fm, f1), 1e-14, 48);
  }
};

}  // namespace

double f_cdf_quadrature(double x, std::size_t d1, std::size_t d2) {
  if (x <= 0.0) return 0.0;
  const double a = static_cast<double>(d1) / 2.0;
  const double b = static_cast<double>(d2) / 2.0;
  const double z = static_cast<double>(d1) * x /
                   (static_cast<double>(d1) * x + static_cast<double>(d2));
  const BetaSimpson bs{a, b};
  const double num = bs.integral(0.0, z);
  const double den = num + bs.integral(z, 1.0);
  return num / den;
}

double f_quantile_bisection(double p, std::size_t d1, std::size_t d2) {
  double lo = 0.0;
  double hi = 1.0;
  while (1.0 - f_cdf_quadrature(hi, d1, d2) > p) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (1.0 - f_cdf_quadrature(mid, d1, d2) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-12 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

std::vector<cplx> naive_dft(const std::vector<cplx>& x) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const double ph = -2.0 * kPi * static_cast<double>(j) *
                        static_cast<double>(k) / static_cast<double>(n);
      out[k] += x[j] * cplx(std::cos(ph), std::sin(ph));
    }
  }
  return out;
}

std::vector<double> classical_multitaper_power(
    const nuspectral::SamplingGrid& grid, const std::vector<double>& values,
    double f_max, double f_w, std::size_t k_tapers,
    const std::vector<double>& centers) {
  using namespace nuspectral;
  const std::size_t n = grid.n_samples();
  const double h = grid.span() / static_cast<double>(n - 1);
  const double tw = f_w * h * static_cast<double>(n);
  const DpssSet dpss = dpss_uniform(n, tw, k_tapers);
  const KernelMatrix rb = signal_band_kernel(grid, SignalBand(f_max));
  std::vector<double> power(centers.size(), 0.0);
  for (std::size_t k = 0; k < k_tapers; ++k) {
    std::vector<double> w = dpss.tapers[k];
    const double q = rb.quadratic_form(w);
    const double s = std::sqrt(2.0 * f_w / q);
    for (auto& x : w) x *= s;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double ph = -2.0 * kPi * centers[i] * grid.times()[j];
        re += w[j] * values[j] * std::cos(ph);
        im += w[j] * values[j] * std::sin(ph);
      }
      power[i] += re * re + im * im;
    }
  }
  for (auto& p : power) p /= static_cast<double>(k_tapers);
  return power;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return std::abs(ab) / std::sqrt(aa * bb);
}

MeanSem two_pass_mean_sem(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(v.size()))};
}

}  // namespace oracles
