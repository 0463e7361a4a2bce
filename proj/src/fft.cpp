#include "nuspectral/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace nuspectral {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::size_t Radix2Fft::next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

Radix2Fft::Radix2Fft(std::size_t n) : n_(n) {
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("Radix2Fft: size must be a power of two");
  }
  bitrev_.resize(n);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    bitrev_[i] = r;
  }
  twiddles_.resize(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j) {
    const double ang = -2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    twiddles_[j] = {std::cos(ang), std::sin(ang)};
  }
}

void Radix2Fft::transform(std::complex<double>* data, bool inverse) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j = bitrev_[i];
    if (j > i) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t step = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<double> w = twiddles_[j * step];
        if (inverse) w = std::conj(w);
        const std::complex<double> u = data[start + j];
        const std::complex<double> v = data[start + j + half] * w;
        data[start + j] = u + v;
        data[start + j + half] = u - v;
      }
    }
  }
}

void Radix2Fft::forward(std::complex<double>* data) const { transform(data, false); }
void Radix2Fft::inverse(std::complex<double>* data) const { transform(data, true); }

}  // namespace nuspectral
