#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"
#include "mldtw/simd/kernels.hpp"

namespace mldtw::simd {

namespace {

constexpr Kernels kScalar{Isa::scalar,          detail::row_costs_scalar, detail::dtw_row_scalar,
                          detail::gemm_nn_scalar, detail::gemm_tn_scalar,  detail::relu_scalar,
                          detail::adam_scalar};

#if defined(MLDTW_HAVE_AVX2)
constexpr Kernels kAvx2{Isa::avx2,          detail::row_costs_avx2, detail::dtw_row_avx2, detail::gemm_nn_avx2,
                        detail::gemm_tn_avx2, detail::relu_avx2,      detail::adam_avx2};
#endif

const Kernels* detect() noexcept {
    if (const char* env = std::getenv("MLDTW_SIMD"); env && std::string_view(env) == "scalar") return &kScalar;
    if (const Kernels* k = avx2_kernels()) return k;
    return &kScalar;
}

std::atomic<const Kernels*>& slot() noexcept {
    static std::atomic<const Kernels*> current{detect()};
    return current;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

const Kernels& scalar_kernels() noexcept { return kScalar; }

const Kernels* avx2_kernels() noexcept {
#if defined(MLDTW_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const Kernels& active() noexcept { return *slot().load(std::memory_order_acquire); }

bool force_isa(Isa isa) noexcept {
    const Kernels* k = isa == Isa::scalar ? &kScalar : avx2_kernels();
    if (!k) return false;
    slot().store(k, std::memory_order_release);
    return true;
}

}  // namespace mldtw::simd
