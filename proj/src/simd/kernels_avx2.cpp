#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace mldtw::simd::detail {

namespace {

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

}  // namespace

void row_costs_avx2(const double* a, const double* b_planes, std::size_t stride, std::size_t dim,
                    std::size_t first, std::size_t count, double* out) {
    std::size_t k = 0;
    if (dim == 1) {
        const __m256d av = _mm256_set1_pd(a[0]);
        for (; k + 4 <= count; k += 4) {
            const __m256d b = _mm256_loadu_pd(b_planes + first + k);
            _mm256_storeu_pd(out + k, abs_pd(_mm256_sub_pd(av, b)));
        }
        for (; k < count; ++k) out[k] = std::fabs(a[0] - b_planes[first + k]);
        return;
    }
    for (; k + 4 <= count; k += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t d = 0; d < dim; ++d) {
            const __m256d b = _mm256_loadu_pd(b_planes + d * stride + first + k);
            const __m256d diff = _mm256_sub_pd(_mm256_set1_pd(a[d]), b);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
        }
        _mm256_storeu_pd(out + k, _mm256_sqrt_pd(acc));
    }
    if (k < count) row_costs_scalar(a, b_planes, stride, dim, first + k, count - k, out + k);
}

void dtw_row_avx2(const double* prev, double* cur, const double* cost, std::size_t lo, std::size_t hi) {
    // The up/diagonal half of the recurrence has no loop-carried dependency
    // and is done four lanes at a time; the left-neighbour scan stays serial
    // with the running value kept in a register.
    alignas(32) double vert[4];
    double left = cur[lo - 1];
    std::size_t j = lo;
    for (; j + 3 <= hi; j += 4) {
        const __m256d c = _mm256_loadu_pd(cost + (j - lo));
        const __m256d diag = _mm256_loadu_pd(prev + j - 1);
        const __m256d up = _mm256_loadu_pd(prev + j);
        _mm256_store_pd(vert, _mm256_add_pd(c, _mm256_min_pd(diag, up)));
        for (int t = 0; t < 4; ++t) {
            const double via_left = cost[j + t - lo] + left;
            left = vert[t] < via_left ? vert[t] : via_left;
            cur[j + t] = left;
        }
    }
    for (; j <= hi; ++j) {
        const double c = cost[j - lo];
        const double vertical = c + std::min(prev[j - 1], prev[j]);
        const double via_left = c + left;
        left = vertical < via_left ? vertical : via_left;
        cur[j] = left;
    }
}

namespace {

// Register-blocked C row segment update; k runs in ascending order for every
// output element, matching the scalar reference exactly.
template <bool Transposed>
void gemm_avx2(std::size_t M, std::size_t N, std::size_t K, const double* A, std::size_t lda, const double* B,
               std::size_t ldb, double* C, std::size_t ldc, bool accumulate) {
    auto a_at = [&](std::size_t i, std::size_t k) { return Transposed ? A[k * lda + i] : A[i * lda + k]; };
    for (std::size_t i = 0; i < M; ++i) {
        double* c = C + i * ldc;
        std::size_t j = 0;
        for (; j + 16 <= N; j += 16) {
            __m256d c0 = accumulate ? _mm256_loadu_pd(c + j) : _mm256_setzero_pd();
            __m256d c1 = accumulate ? _mm256_loadu_pd(c + j + 4) : _mm256_setzero_pd();
            __m256d c2 = accumulate ? _mm256_loadu_pd(c + j + 8) : _mm256_setzero_pd();
            __m256d c3 = accumulate ? _mm256_loadu_pd(c + j + 12) : _mm256_setzero_pd();
            for (std::size_t k = 0; k < K; ++k) {
                const __m256d a = _mm256_set1_pd(a_at(i, k));
                const double* b = B + k * ldb + j;
                c0 = _mm256_add_pd(c0, _mm256_mul_pd(a, _mm256_loadu_pd(b)));
                c1 = _mm256_add_pd(c1, _mm256_mul_pd(a, _mm256_loadu_pd(b + 4)));
                c2 = _mm256_add_pd(c2, _mm256_mul_pd(a, _mm256_loadu_pd(b + 8)));
                c3 = _mm256_add_pd(c3, _mm256_mul_pd(a, _mm256_loadu_pd(b + 12)));
            }
            _mm256_storeu_pd(c + j, c0);
            _mm256_storeu_pd(c + j + 4, c1);
            _mm256_storeu_pd(c + j + 8, c2);
            _mm256_storeu_pd(c + j + 12, c3);
        }
        for (; j + 4 <= N; j += 4) {
            __m256d c0 = accumulate ? _mm256_loadu_pd(c + j) : _mm256_setzero_pd();
            for (std::size_t k = 0; k < K; ++k)
                c0 = _mm256_add_pd(c0, _mm256_mul_pd(_mm256_set1_pd(a_at(i, k)), _mm256_loadu_pd(B + k * ldb + j)));
            _mm256_storeu_pd(c + j, c0);
        }
        for (; j < N; ++j) {
            double acc = accumulate ? c[j] : 0.0;
            for (std::size_t k = 0; k < K; ++k) acc = acc + a_at(i, k) * B[k * ldb + j];
            c[j] = acc;
        }
    }
}

}  // namespace

void gemm_nn_avx2(std::size_t M, std::size_t N, std::size_t K, const double* A, std::size_t lda, const double* B,
                  std::size_t ldb, double* C, std::size_t ldc, bool accumulate) {
    gemm_avx2<false>(M, N, K, A, lda, B, ldb, C, ldc, accumulate);
}

void gemm_tn_avx2(std::size_t M, std::size_t N, std::size_t K, const double* A, std::size_t lda, const double* B,
                  std::size_t ldb, double* C, std::size_t ldc, bool accumulate) {
    gemm_avx2<true>(M, N, K, A, lda, B, ldb, C, ldc, accumulate);
}

void relu_avx2(double* x, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
    for (; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void adam_avx2(double* w, const double* g, double* m, double* v, std::size_t n, double lr, double beta1,
               double beta2, double eps, double corr1, double corr2) {
    const __m256d b1 = _mm256_set1_pd(beta1), b2 = _mm256_set1_pd(beta2);
    const __m256d ob1 = _mm256_set1_pd(1.0 - beta1), ob2 = _mm256_set1_pd(1.0 - beta2);
    const __m256d c1 = _mm256_set1_pd(corr1), c2 = _mm256_set1_pd(corr2);
    const __m256d vlr = _mm256_set1_pd(lr), veps = _mm256_set1_pd(eps);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d gi = _mm256_loadu_pd(g + i);
        const __m256d mi = _mm256_add_pd(_mm256_mul_pd(b1, _mm256_loadu_pd(m + i)), _mm256_mul_pd(ob1, gi));
        const __m256d vi = _mm256_add_pd(_mm256_mul_pd(b2, _mm256_loadu_pd(v + i)),
                                         _mm256_mul_pd(ob2, _mm256_mul_pd(gi, gi)));
        _mm256_storeu_pd(m + i, mi);
        _mm256_storeu_pd(v + i, vi);
        const __m256d mhat = _mm256_div_pd(mi, c1);
        const __m256d vhat = _mm256_div_pd(vi, c2);
        const __m256d step = _mm256_div_pd(_mm256_mul_pd(vlr, mhat), _mm256_add_pd(_mm256_sqrt_pd(vhat), veps));
        _mm256_storeu_pd(w + i, _mm256_sub_pd(_mm256_loadu_pd(w + i), step));
    }
    if (i < n) adam_scalar(w + i, g + i, m + i, v + i, n - i, lr, beta1, beta2, eps, corr1, corr2);
}

}  // namespace mldtw::simd::detail
