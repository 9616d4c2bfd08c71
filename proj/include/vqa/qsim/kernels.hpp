#pragma once

#include <array>
#include <span>
#include <string_view>

#include "vqa/qsim/types.hpp"

// Inner loops of the statevector simulator. Every kernel has a portable
// scalar reference and, on x86-64, an AVX2 variant. Both perform the same
// floating-point operations in the same order, so their results agree bit
// for bit; tests/unit/kernels_test.cpp holds them to that.

namespace vqa::qsim::kernels {

enum class Backend { kScalar, kAvx2 };

std::string_view backend_name(Backend b) noexcept;

/// Row-major 2x2 and 4x4 complex matrices.
using Mat2 = std::array<Complex, 4>;
using Mat4 = std::array<Complex, 16>;

struct KernelTable {
  Backend backend;
  /// amps[i0], amps[i1] <- m * (amps[i0], amps[i1]) for every pair differing in bit `target`.
  void (*apply_1q)(std::span<Complex> amps, unsigned target, const Mat2& m);
  /// Local index l = bit(q0) | bit(q1) << 1.
  void (*apply_2q)(std::span<Complex> amps, unsigned q0, unsigned q1, const Mat4& m);
  /// out[i] = |amps[i]|^2.
  void (*norm_squared)(std::span<const Complex> amps, std::span<double> out);
};

const KernelTable& scalar_kernels() noexcept;

/// Null when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

/// Kernels used by the simulator. Chosen once at first use: AVX2 when the
/// CPU supports it, unless the environment variable VQA_KERNEL=scalar.
const KernelTable& active() noexcept;

/// Forces a backend; returns false (and changes nothing) if unavailable.
bool set_backend(Backend b) noexcept;

}  // namespace vqa::qsim::kernels
