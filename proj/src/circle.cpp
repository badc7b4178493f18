#include "stdisc/circle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>

#include <fftw3.h>

namespace stdisc {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex planner_mutex;

// Unscaled DFT. sign = FFTW_FORWARD or FFTW_BACKWARD.
void fft_inplace(std::vector<cplx>& a, int sign) {
  const int n = static_cast<int>(a.size());
  auto* buf = fftw_alloc_complex(a.size());
  if (!buf) throw Error(ErrorKind::Internal, "fftw_alloc_complex failed");
  std::copy(a.begin(), a.end(), reinterpret_cast<cplx*>(buf));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::copy_n(reinterpret_cast<cplx*>(buf), a.size(), a.begin());
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
}

double sum_sq(std::span<const cplx> c, auto&& pred) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (pred(i)) s += std::norm(c[i]);
  return s;
}

}  // namespace

CircleGrid::CircleGrid(std::size_t n) : n_(n) {
  if (n < 8 || !std::has_single_bit(n))
    throw Error(ErrorKind::InvalidArgument,
                "circle grid size must be a power of two and at least 8 (got " + std::to_string(n) + ")");
}

cplx CircleGrid::node(std::size_t k) const noexcept {
  k %= n_;
  const std::size_t q = n_ / 4;
  if (k == 0) return {1.0, 0.0};
  if (k == q) return {0.0, 1.0};
  if (k == 2 * q) return {-1.0, 0.0};
  if (k == 3 * q) return {0.0, -1.0};
  const double th = theta(k);
  return {std::cos(th), std::sin(th)};
}

FourierSpectrum::FourierSpectrum(CircleGrid grid, std::vector<cplx> coefficients)
    : grid_(grid), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != grid_.size())
    throw Error(ErrorKind::InvalidArgument, "coefficient count does not match grid size");
}

cplx FourierSpectrum::operator[](int k) const noexcept {
  if (k < min_mode() || k > max_mode()) return {};
  return coeffs_[static_cast<std::size_t>(k - min_mode())];
}

FourierSpectrum spectrum(const ComplexSamples& samples) {
  const std::size_t n = samples.size();
  std::vector<cplx> a(samples.values().begin(), samples.values().end());
  fft_inplace(a, FFTW_FORWARD);
  // FFT output index j holds mode j for j < n/2 and mode j - n otherwise.
  std::vector<cplx> c(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t slot = (j + n / 2) % n;
    c[slot] = a[j] * scale;
  }
  return FourierSpectrum(samples.grid(), std::move(c));
}

FourierSpectrum spectrum(const RealSamples& samples) {
  std::vector<cplx> v(samples.values().begin(), samples.values().end());
  return spectrum(ComplexSamples(samples.grid(), std::move(v)));
}

ComplexSamples synthesize(const FourierSpectrum& spec) {
  const std::size_t n = spec.size();
  std::vector<cplx> a(n);
  const auto c = spec.coefficients();
  for (std::size_t slot = 0; slot < n; ++slot) a[(slot + n / 2) % n] = c[slot];
  fft_inplace(a, FFTW_BACKWARD);
  return ComplexSamples(spec.grid(), std::move(a));
}

RealSamples hilbert_t1(const RealSamples& u) {
  const auto spec = spectrum(u);
  const std::size_t n = spec.size();
  std::vector<cplx> m(n);
  for (int k = spec.min_mode() + 1; k <= spec.max_mode(); ++k) {
    if (k == 0) continue;
    const cplx mult = k > 0 ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
    m[static_cast<std::size_t>(k - spec.min_mode())] = mult * spec[k];
  }
  const auto v = synthesize(FourierSpectrum(u.grid(), std::move(m)));
  const double shift = v[0].real();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = v[j].real() - shift;
  out[0] = 0.0;
  return RealSamples(u.grid(), std::move(out));
}

double negative_energy(const FourierSpectrum& spec) {
  return negative_energy(std::span<const FourierSpectrum>(&spec, 1));
}

double negative_energy(std::span<const FourierSpectrum> specs) {
  double neg = 0.0, total = 0.0;
  for (const auto& s : specs) {
    const auto c = s.coefficients();
    const std::size_t zero = s.size() / 2;
    neg += sum_sq(c, [&](std::size_t i) { return i < zero; });
    total += sum_sq(c, [](std::size_t) { return true; });
  }
  if (total == 0.0)
    throw Error(ErrorKind::DegenerateInput, "negative-mode energy of an all-zero function is undefined");
  return std::min(1.0, std::sqrt(neg / total));
}

double tail_energy(const FourierSpectrum& spec) {
  const auto c = spec.coefficients();
  const int quarter = static_cast<int>(spec.size() / 4);
  const int lo = spec.min_mode();
  const double total = sum_sq(c, [](std::size_t) { return true; });
  if (total == 0.0) return 0.0;
  const double tail = sum_sq(c, [&](std::size_t i) {
    const int k = static_cast<int>(i) + lo;
    return k >= quarter || k <= -quarter;
  });
  return std::sqrt(tail / total);
}

cplx extend_eval(const FourierSpectrum& spec, cplx tau) {
  if (!(std::abs(tau) <= 1.0 - 1e-9))
    throw Error(ErrorKind::EvaluationDomain, "holomorphic extension requires |tau| <= 1 - 1e-9");
  cplx acc{};
  for (int k = spec.max_mode(); k >= 0; --k) acc = acc * tau + spec[k];
  return acc;
}

FourierSpectrum holomorphic_completion(const RealSamples& u, double imag_mean) {
  const auto s = spectrum(u);
  std::vector<cplx> c(s.size());
  const auto at = [&](int k) -> cplx& { return c[static_cast<std::size_t>(k - s.min_mode())]; };
  at(0) = {s[0].real(), imag_mean};
  for (int k = 1; k <= s.max_mode(); ++k) at(k) = 2.0 * s[k];
  return FourierSpectrum(u.grid(), std::move(c));
}

double mean(const RealSamples& u) noexcept {
  return std::accumulate(u.values().begin(), u.values().end(), 0.0) / static_cast<double>(u.size());
}

cplx mean(const ComplexSamples& u) noexcept {
  return std::accumulate(u.values().begin(), u.values().end(), cplx{}) / static_cast<double>(u.size());
}

}  // namespace stdisc
