#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nuspectral {

/// In-place iterative radix-2 complex FFT with precomputed twiddles.
/// forward() evaluates X_k = sum_j x_j e^{-2 pi i j k / n}; inverse()
/// the conjugate transform without the 1/n scale.
class Radix2Fft {
public:
  explicit Radix2Fft(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::complex<double>* data) const;
  void inverse(std::complex<double>* data) const;

  static bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
  static std::size_t next_power_of_two(std::size_t n);

private:
  void transform(std::complex<double>* data, bool inverse) const;

  std::size_t n_;
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<double>> twiddles_;  // e^{-2 pi i j / n}, j < n/2
};

}  // namespace nuspectral
