#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "nuspectral/errors.hpp"
#include "nuspectral/kernels.hpp"

namespace nuspectral {

enum class EigenMetric { identity, rb_metric };

/// Eigenvalues sorted descending with matching eigenvectors, orthonormal
/// in the stated metric. residuals[i] holds ||A v - lambda M v|| /
/// (||A||_F ||v||) for the returned pairs.
struct EigenPairs {
  std::vector<double> values;
  std::vector<std::vector<std::complex<double>>> vectors;
  EigenMetric metric = EigenMetric::identity;
  std::vector<double> residuals;

  std::size_t count() const { return values.size(); }
};

/// Top k_top eigenpairs of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal. Eigenvalues via implicit-shift QL; vectors via
/// inverse iteration with a full-accumulation fallback when residuals are
/// not met. Vectors are unit-norm with the largest-magnitude element positive.
EigenPairs tridiagonal_eigen(const std::vector<double>& diag,
                             const std::vector<double>& offdiag,
                             std::size_t k_top);

/// All eigenvalues (descending) of a symmetric tridiagonal matrix.
std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& offdiag);

struct GeneralizedEigenOptions {
  bool want_vectors = true;
  // Ridge factors tried in order, scaled by trace(M)/n, before Cholesky
  // is declared failed.
  double ridge_first = 1e-12;
  double ridge_retry = 1e-9;
};

/// Solve A w = lambda M w for Hermitian A and positive definite M (the
/// signal-band kernel, which is real symmetric), by Cholesky reduction and
/// a Householder + implicit-QL Hermitian eigensolve. Returns the top k_top
/// pairs with eigenvalues clamped into [0, 1]; throws SpectralRangeError
/// when an eigenvalue falls outside [-1e-6, 1 + 1e-6] and ConditioningError
/// when M cannot be factorized after ridge regularization. Vectors are
/// normalized to w^* M w = 1 (M-orthogonal).
EigenPairs generalized_hermitian_eigen(const KernelMatrix& A,
                                       const KernelMatrix& M,
                                       std::size_t k_top,
                                       const GeneralizedEigenOptions& opts = {});

/// Top k_top generalized eigenvalues only (no vectors); same contract
/// otherwise. Used by per-band diagnostics where only the spectrum matters.
std::vector<double> generalized_hermitian_eigenvalues(
    const KernelMatrix& A, const KernelMatrix& M, std::size_t k_top,
    const GeneralizedEigenOptions& opts = {});

/// C^2 piecewise-cubic interpolant through the knots with not-a-knot end
/// conditions. Evaluation is allowed half an end interval beyond the knot
/// span (the argument is clamped to the span); further out it throws
/// ExtrapolationError.
class CubicSpline {
public:
  CubicSpline(std::vector<double> x_knots, std::vector<double> y_knots);

  double operator()(double x) const;

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

/// Factory matching the operation name used elsewhere in the library.
CubicSpline cubic_spline(std::vector<double> x_knots, std::vector<double> y_knots);

namespace detail {

/// In-place implicit-shift QL on a symmetric tridiagonal (d, e); e is
/// destroyed. When z is non-null it must point at an n x n row-major
/// matrix whose columns get the accumulated rotations (pass identity to
/// obtain eigenvectors as columns).
void ql_implicit(std::vector<double>& d, std::vector<double>& e, double* z,
                 std::size_t n);

/// Lower-triangular in-place Cholesky; returns false if the matrix is not
/// numerically positive definite.
bool cholesky_lower(std::vector<double>& a, std::size_t n);

}  // namespace detail

}  // namespace nuspectral
