#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "nuspectral/grid.hpp"

namespace nuspectral {

/// Dense Hermitian concentration matrix of a frequency band on a grid:
/// entries integrate e^{j2*pi*f(t_n - t_m)} over the band. Real symmetric
/// when the band is centered at zero; storage drops the imaginary plane
/// in that case.
class KernelMatrix {
public:
  KernelMatrix(std::size_t n, bool is_real, std::string band_tag);

  std::size_t n() const { return n_; }
  bool is_real() const { return is_real_; }
  const std::string& band_tag() const { return band_tag_; }

  double re(std::size_t r, std::size_t c) const { return re_[r * n_ + c]; }
  double im(std::size_t r, std::size_t c) const {
    return is_real_ ? 0.0 : im_[r * n_ + c];
  }
  std::complex<double> at(std::size_t r, std::size_t c) const {
    return {re(r, c), im(r, c)};
  }

  double* re_data() { return re_.data(); }
  double* im_data() { return im_.data(); }
  const double* re_data() const { return re_.data(); }
  const double* im_data() const { return im_.data(); }

  /// w^* M w for real w (requires a real kernel).
  double quadratic_form(const std::vector<double>& w) const;
  /// w^* M w (Hermitian, so the result is real).
  double quadratic_form(const std::vector<std::complex<double>>& w) const;
  /// w^* M v for real w, v.
  double bilinear_form(const std::vector<double>& w,
                       const std::vector<double>& v) const;
  /// w^* M v, complex.
  std::complex<double> bilinear_form(const std::vector<std::complex<double>>& w,
                                     const std::vector<std::complex<double>>& v) const;

  double trace() const;

private:
  std::size_t n_;
  bool is_real_;
  std::string band_tag_;
  std::vector<double> re_;
  std::vector<double> im_;
};

/// Kernel of the full signal band [-f_max, f_max]:
/// sin(2*pi*f_max*(t_n - t_m)) / (pi*(t_n - t_m)), diagonal 2*f_max.
KernelMatrix signal_band_kernel(const SamplingGrid& grid, const SignalBand& band);

/// Kernel of an analysis band [f_c - f_w, f_c + f_w]:
/// the zero-centered sinc kernel modulated by e^{j2*pi*f_c*(t_n - t_m)}.
KernelMatrix analysis_band_kernel(const SamplingGrid& grid, const AnalysisBand& band);

/// Diagonal of the band-shifting operator: exp(j*2*pi*f_c*t_n).
std::vector<std::complex<double>> shift_phases(const SamplingGrid& grid, double f_c);

}  // namespace nuspectral
