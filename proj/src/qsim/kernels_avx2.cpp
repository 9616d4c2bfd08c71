// Compiled with -mavx2 (no -mfma: fused multiply-add would change rounding
// relative to the scalar reference).
#include <immintrin.h>

#include "kernels_internal.hpp"

namespace vqa::qsim::kernels::detail {

namespace {

// v holds two complex numbers [r0, i0, r1, i1]; mr/mi hold per-lane matrix
// entries broadcast as [mr0, mr0, mr1, mr1] / [mi0, mi0, mi1, mi1].
// Result lanes: [r*mr - i*mi, i*mr + r*mi], matching the scalar cmul.
inline __m256d cmul(__m256d v, __m256d mr, __m256d mi) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  const __m256d a = _mm256_mul_pd(v, mr);
  const __m256d b = _mm256_mul_pd(swapped, mi);
  return _mm256_addsub_pd(a, b);
}

inline __m256d broadcast_re(const Complex& m) { return _mm256_set1_pd(m.real()); }
inline __m256d broadcast_im(const Complex& m) { return _mm256_set1_pd(m.imag()); }

inline __m256d pair_re(const Complex& lo, const Complex& hi) {
  return _mm256_setr_pd(lo.real(), lo.real(), hi.real(), hi.real());
}
inline __m256d pair_im(const Complex& lo, const Complex& hi) {
  return _mm256_setr_pd(lo.imag(), lo.imag(), hi.imag(), hi.imag());
}

inline double* raw(std::span<Complex> a) { return reinterpret_cast<double*>(a.data()); }

}  // namespace

void apply_1q_avx2(std::span<Complex> amps, unsigned target, const Mat2& m) {
  const std::size_t n = amps.size();
  double* p = raw(amps);
  if (target == 0) {
    // One register holds the pair (a0, a1).
    const __m256d c0r = pair_re(m[0], m[2]), c0i = pair_im(m[0], m[2]);
    const __m256d c1r = pair_re(m[1], m[3]), c1i = pair_im(m[1], m[3]);
    for (std::size_t j = 0; j < n; j += 2) {
      const __m256d v = _mm256_loadu_pd(p + 2 * j);
      const __m256d lo = _mm256_permute2f128_pd(v, v, 0x00);
      const __m256d hi = _mm256_permute2f128_pd(v, v, 0x11);
      const __m256d r = _mm256_add_pd(cmul(lo, c0r, c0i), cmul(hi, c1r, c1i));
      _mm256_storeu_pd(p + 2 * j, r);
    }
    return;
  }
  const __m256d m0r = broadcast_re(m[0]), m0i = broadcast_im(m[0]);
  const __m256d m1r = broadcast_re(m[1]), m1i = broadcast_im(m[1]);
  const __m256d m2r = broadcast_re(m[2]), m2i = broadcast_im(m[2]);
  const __m256d m3r = broadcast_re(m[3]), m3i = broadcast_im(m[3]);
  const std::size_t stride = std::size_t{1} << target;
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; j += 2) {
      const __m256d a0 = _mm256_loadu_pd(p + 2 * j);
      const __m256d a1 = _mm256_loadu_pd(p + 2 * (j + stride));
      const __m256d r0 = _mm256_add_pd(cmul(a0, m0r, m0i), cmul(a1, m1r, m1i));
      const __m256d r1 = _mm256_add_pd(cmul(a0, m2r, m2i), cmul(a1, m3r, m3i));
      _mm256_storeu_pd(p + 2 * j, r0);
      _mm256_storeu_pd(p + 2 * (j + stride), r1);
    }
  }
}

void apply_2q_avx2(std::span<Complex> amps, unsigned q0, unsigned q1, const Mat4& m) {
  // Output rows are produced two at a time: lanes (row 0, row 1) and
  // (row 2, row 3), each accumulating over the four inputs in order.
  __m256d cr[2][4], ci[2][4];
  for (int half = 0; half < 2; ++half) {
    for (int k = 0; k < 4; ++k) {
      cr[half][k] = pair_re(m[4 * (2 * half) + k], m[4 * (2 * half + 1) + k]);
      ci[half][k] = pair_im(m[4 * (2 * half) + k], m[4 * (2 * half + 1) + k]);
    }
  }
  const std::size_t b0 = std::size_t{1} << q0;
  const std::size_t b1 = std::size_t{1} << q1;
  const std::size_t n = amps.size();
  double* p = raw(amps);
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & b0) || (i & b1)) continue;
    const std::size_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
    __m256d a[4];
    for (int k = 0; k < 4; ++k) {
      a[k] = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(p + 2 * idx[k]));
    }
    __m256d out[2];
    for (int half = 0; half < 2; ++half) {
      __m256d acc = cmul(a[0], cr[half][0], ci[half][0]);
      for (int k = 1; k < 4; ++k) acc = _mm256_add_pd(acc, cmul(a[k], cr[half][k], ci[half][k]));
      out[half] = acc;
    }
    _mm_storeu_pd(p + 2 * idx[0], _mm256_castpd256_pd128(out[0]));
    _mm_storeu_pd(p + 2 * idx[1], _mm256_extractf128_pd(out[0], 1));
    _mm_storeu_pd(p + 2 * idx[2], _mm256_castpd256_pd128(out[1]));
    _mm_storeu_pd(p + 2 * idx[3], _mm256_extractf128_pd(out[1], 1));
  }
}

void norm_squared_avx2(std::span<const Complex> amps, std::span<double> out) {
  const double* p = reinterpret_cast<const double*>(amps.data());
  const std::size_t n = amps.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(p + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);
    const __m256d s0 = _mm256_mul_pd(v0, v0);
    const __m256d s1 = _mm256_mul_pd(v1, v1);
    // hadd -> [p0, p2, p1, p3]
    const __m256d h = _mm256_hadd_pd(s0, s1);
    _mm256_storeu_pd(out.data() + i, _mm256_permute4x64_pd(h, 0b11011000));
  }
  for (; i < n; ++i) {
    out[i] = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
  }
}

}  // namespace vqa::qsim::kernels::detail
