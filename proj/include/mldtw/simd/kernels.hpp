#pragma once

// Data-parallel inner loops used by the cost-matrix fill and the dense
// network. Each kernel has a portable scalar reference and, where the CPU
// supports it, a vector variant. Variants are selected once at runtime.
//
// Every variant performs the same floating-point operations in the same
// order per output element (no fused multiply-add, no reassociated sums), so
// all variants are bit-for-bit interchangeable.

#include <cstddef>
#include <string_view>

namespace mldtw::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct Kernels {
    Isa isa;

    // out[k] = || a - b_(first+k) ||_2 for k < count. `b_planes` is
    // dimension-major with `stride` values per plane. For dim == 1 the
    // distance is |a - b|.
    void (*row_costs)(const double* a, const double* b_planes, std::size_t stride, std::size_t dim,
                      std::size_t first, std::size_t count, double* out);

    // cur[j] = cost[j - lo] + min(prev[j - 1], prev[j], cur[j - 1]) for
    // j in [lo, hi]. Reads prev[lo - 1 .. hi] and cur[lo - 1].
    void (*dtw_row)(const double* prev, double* cur, const double* cost, std::size_t lo, std::size_t hi);

    // C[MxN] (+)= A[MxK] * B[KxN], all row-major with leading dimensions.
    void (*gemm_nn)(std::size_t M, std::size_t N, std::size_t K, const double* A, std::size_t lda,
                    const double* B, std::size_t ldb, double* C, std::size_t ldc, bool accumulate);

    // C[MxN] (+)= A^T * B with A stored KxM.
    void (*gemm_tn)(std::size_t M, std::size_t N, std::size_t K, const double* A, std::size_t lda,
                    const double* B, std::size_t ldb, double* C, std::size_t ldc, bool accumulate);

    // x[i] = max(0, x[i])
    void (*relu)(double* x, std::size_t n);

    // One Adam step over n parameters; `corr1` and `corr2` are the bias
    // corrections 1 - beta1^t and 1 - beta2^t.
    void (*adam)(double* w, const double* g, double* m, double* v, std::size_t n, double lr, double beta1,
                 double beta2, double eps, double corr1, double corr2);
};

/// Always available.
const Kernels& scalar_kernels() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks the ISA.
const Kernels* avx2_kernels() noexcept;

/// The table used by the library. Chosen on first use: the best supported
/// ISA, unless the MLDTW_SIMD environment variable names another ("scalar").
const Kernels& active() noexcept;

/// Overrides the active table. Returns false if `isa` is unavailable here.
bool force_isa(Isa isa) noexcept;

}  // namespace mldtw::simd
