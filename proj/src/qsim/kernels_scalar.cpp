#include "kernels_internal.hpp"

namespace vqa::qsim::kernels::detail {

namespace {

// Explicit real arithmetic; the AVX2 kernels reproduce this operation order.
inline void cmul_acc(double& re, double& im, const Complex& a, const Complex& m) {
  const double pr = a.real() * m.real() - a.imag() * m.imag();
  const double pi = a.imag() * m.real() + a.real() * m.imag();
  re += pr;
  im += pi;
}

inline Complex cmul(const Complex& a, const Complex& m) {
  return {a.real() * m.real() - a.imag() * m.imag(), a.imag() * m.real() + a.real() * m.imag()};
}

}  // namespace

void apply_1q_scalar(std::span<Complex> amps, unsigned target, const Mat2& m) {
  const std::size_t stride = std::size_t{1} << target;
  const std::size_t n = amps.size();
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; ++j) {
      const Complex a0 = amps[j];
      const Complex a1 = amps[j + stride];
      Complex r0 = cmul(a0, m[0]);
      Complex r1 = cmul(a0, m[2]);
      double re0 = r0.real(), im0 = r0.imag(), re1 = r1.real(), im1 = r1.imag();
      cmul_acc(re0, im0, a1, m[1]);
      cmul_acc(re1, im1, a1, m[3]);
      amps[j] = {re0, im0};
      amps[j + stride] = {re1, im1};
    }
  }
}

void apply_2q_scalar(std::span<Complex> amps, unsigned q0, unsigned q1, const Mat4& m) {
  const std::size_t b0 = std::size_t{1} << q0;
  const std::size_t b1 = std::size_t{1} << q1;
  const std::size_t n = amps.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & b0) || (i & b1)) continue;
    const std::size_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
    const Complex a[4] = {amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      const Complex first = cmul(a[0], m[4 * r]);
      double re = first.real(), im = first.imag();
      for (int k = 1; k < 4; ++k) cmul_acc(re, im, a[k], m[4 * r + k]);
      amps[idx[r]] = {re, im};
    }
  }
}

void norm_squared_scalar(std::span<const Complex> amps, std::span<double> out) {
  for (std::size_t i = 0; i < amps.size(); ++i) {
    out[i] = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
  }
}

}  // namespace vqa::qsim::kernels::detail
