#include "vqa/qsim/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_internal.hpp"

namespace vqa::qsim::kernels {

namespace {

constexpr KernelTable kScalar{Backend::kScalar, &detail::apply_1q_scalar,
                              &detail::apply_2q_scalar, &detail::norm_squared_scalar};

#if defined(VQA_HAVE_AVX2)
constexpr KernelTable kAvx2{Backend::kAvx2, &detail::apply_1q_avx2, &detail::apply_2q_avx2,
                            &detail::norm_squared_avx2};
#endif

bool cpu_has_avx2() noexcept {
#if defined(VQA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial_choice() noexcept {
  const char* env = std::getenv("VQA_KERNEL");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return &kScalar;
  const KernelTable* simd = avx2_kernels();
  return simd != nullptr ? simd : &kScalar;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_choice()};
  return table;
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() noexcept { return kScalar; }

const KernelTable* avx2_kernels() noexcept {
#if defined(VQA_HAVE_AVX2)
  if (cpu_has_avx2()) return &kAvx2;
#endif
  return nullptr;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

bool set_backend(Backend b) noexcept {
  const KernelTable* t = b == Backend::kScalar ? &kScalar : avx2_kernels();
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

}  // namespace vqa::qsim::kernels
