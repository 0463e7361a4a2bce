#pragma once

// Independent oracles for the test suite. Everything here is deliberately
// written with different algorithms than the library paths it checks:
// quadrature instead of closed forms, cyclic Jacobi instead of
// Householder+QL, numerical beta-CDF integration instead of the continued
// fraction.

#include <complex>
#include <cstddef>
#include <vector>

#include "nuspectral/grid.hpp"
#include "nuspectral/tapers.hpp"

namespace oracles {

using cplx = std::complex<double>;

/// Adaptive-Simpson integral of e^{j 2 pi f dt} over [f_lo, f_hi].
cplx band_integral(double dt, double f_lo, double f_hi, double tol = 1e-13);

/// All eigenvalues (descending) of a Hermitian matrix by cyclic Jacobi.
std::vector<double> jacobi_eigenvalues(std::vector<cplx> a, std::size_t n);

/// Eigenvalues and eigenvectors (columns, descending) by cyclic Jacobi.
struct JacobiResult {
  std::vector<double> values;
  std::vector<std::vector<cplx>> vectors;
};
JacobiResult jacobi_eigen(std::vector<cplx> a, std::size_t n);

/// Generalized eigenvalues of (A, M) for Hermitian A and SPD real M via an
/// independently coded Cholesky + Jacobi route.
std::vector<double> generalized_eigenvalues_oracle(const std::vector<cplx>& a,
                                                   const std::vector<double>& m,
                                                   std::size_t n);

/// CDF of F(d1, d2) by adaptive Simpson integration of the beta density.
double f_cdf_quadrature(double x, std::size_t d1, std::size_t d2);

/// Upper-tail F quantile by bisection on f_cdf_quadrature.
double f_quantile_bisection(double p, std::size_t d1, std::size_t d2);

/// Textbook O(n^2) DFT: X_k = sum_j x_j e^{-2 pi i j k / n}.
std::vector<cplx> naive_dft(const std::vector<cplx>& x);

/// Classical uniform-grid multitaper estimate assembled from the library's
/// own dpss_uniform and an explicit direct Fourier sum, normalized in the
/// R(B) metric (the reduction oracle for uniform grids).
std::vector<double> classical_multitaper_power(
    const nuspectral::SamplingGrid& grid, const std::vector<double>& values,
    double f_max, double f_w, std::size_t k_tapers,
    const std::vector<double>& centers);

/// |<a, b>| / (||a|| ||b||).
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

/// Two-pass mean / SEM for comparison with streaming implementations.
struct MeanSem {
  double mean;
  double sem;
};
MeanSem two_pass_mean_sem(const std::vector<double>& v);

}  // namespace oracles
