#pragma once

#include "vqa/qsim/kernels.hpp"

namespace vqa::qsim::kernels::detail {

void apply_1q_scalar(std::span<Complex> amps, unsigned target, const Mat2& m);
void apply_2q_scalar(std::span<Complex> amps, unsigned q0, unsigned q1, const Mat4& m);
void norm_squared_scalar(std::span<const Complex> amps, std::span<double> out);

#if defined(VQA_HAVE_AVX2)
void apply_1q_avx2(std::span<Complex> amps, unsigned target, const Mat2& m);
void apply_2q_avx2(std::span<Complex> amps, unsigned q0, unsigned q1, const Mat4& m);
void norm_squared_avx2(std::span<const Complex> amps, std::span<double> out);
#endif

}  // namespace vqa::qsim::kernels::detail
