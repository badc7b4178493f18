#pragma once

// Uniform sampling on the unit circle and the spectral tools built on it:
// discrete Fourier coefficients, the normalized conjugate-function operator,
// negative-frequency energy, and evaluation of holomorphic extensions.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "stdisc/error.hpp"

namespace stdisc {

using cplx = std::complex<double>;

/// Uniform grid theta_k = 2 pi k / n on the unit circle; n is a power of two, n >= 8.
class CircleGrid {
 public:
  explicit CircleGrid(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double theta(std::size_t k) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_);
  }
  /// e^{i theta_k}, exact at the quarter nodes.
  cplx node(std::size_t k) const noexcept;

  friend bool operator==(const CircleGrid&, const CircleGrid&) = default;

 private:
  std::size_t n_;
};

template <class T>
class CircleSamples {
 public:
  CircleSamples(CircleGrid grid, std::vector<T> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
      throw Error(ErrorKind::InvalidArgument, "sample count does not match grid size");
  }

  /// Samples f(theta_k) on the grid.
  template <class F>
  static CircleSamples from_function(CircleGrid grid, F&& f) {
    std::vector<T> v(grid.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<T>(f(grid.theta(k)));
    return CircleSamples(grid, std::move(v));
  }

  const CircleGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const T> values() const noexcept { return values_; }
  const T& operator[](std::size_t k) const noexcept { return values_[k]; }

 private:
  CircleGrid grid_;
  std::vector<T> values_;
};

using RealSamples = CircleSamples<double>;
using ComplexSamples = CircleSamples<cplx>;

/// Fourier coefficients c_k, k in [-n/2, n/2), of samples on a CircleGrid.
class FourierSpectrum {
 public:
  /// `coefficients` are ordered by mode, starting at k = -n/2.
  FourierSpectrum(CircleGrid grid, std::vector<cplx> coefficients);

  const CircleGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  int min_mode() const noexcept { return -static_cast<int>(coeffs_.size() / 2); }
  int max_mode() const noexcept { return static_cast<int>(coeffs_.size() / 2) - 1; }

  /// c_k; zero for k outside [min_mode, max_mode].
  cplx operator[](int k) const noexcept;
  std::span<const cplx> coefficients() const noexcept { return coeffs_; }

 private:
  CircleGrid grid_;
  std::vector<cplx> coeffs_;
};

FourierSpectrum spectrum(const ComplexSamples& samples);
FourierSpectrum spectrum(const RealSamples& samples);

/// Inverse of spectrum(): sum_k c_k e^{i k theta_j}.
ComplexSamples synthesize(const FourierSpectrum& spec);

/// Normalized conjugate function: multiplier -i sgn(k) (zero on k = 0 and on
/// the unpaired Nyquist mode), then shifted so the value at theta = 0 is 0.
RealSamples hilbert_t1(const RealSamples& u);

/// sqrt(sum_{k<0} |c_k|^2) / sqrt(sum_k |c_k|^2). Throws DegenerateInput on an
/// all-zero spectrum.
double negative_energy(const FourierSpectrum& spec);

/// Negative-mode energy of several spectra pooled together (vector-valued
/// boundary functions).
double negative_energy(std::span<const FourierSpectrum> specs);

/// Relative energy in the modes |k| >= n/4; a resolution monitor.
double tail_energy(const FourierSpectrum& spec);

/// sum_{k>=0} c_k tau^k. Negative modes are discarded. Requires |tau| <= 1 - 1e-9.
cplx extend_eval(const FourierSpectrum& spec, cplx tau);

/// Spectrum of the holomorphic function H with Re H = u on the circle and
/// mean(Im H) = imag_mean: c_0 = mean(u) + i imag_mean, c_k = 2 u_k for k > 0.
FourierSpectrum holomorphic_completion(const RealSamples& u, double imag_mean);

double mean(const RealSamples& u) noexcept;
cplx mean(const ComplexSamples& u) noexcept;

}  // namespace stdisc
