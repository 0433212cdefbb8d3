#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace mldtw::simd::detail {

void row_costs_scalar(const double* a, const double* b_planes, std::size_t stride, std::size_t dim,
                      std::size_t first, std::size_t count, double* out) {
    if (dim == 1) {
        const double av = a[0];
        for (std::size_t k = 0; k < count; ++k) out[k] = std::fabs(av - b_planes[first + k]);
        return;
    }
    for (std::size_t k = 0; k < count; ++k) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = a[d] - b_planes[d * stride + first + k];
            acc = acc + diff * diff;
        }
        out[k] = std::sqrt(acc);
    }
}

void dtw_row_scalar(const double* prev, double* cur, const double* cost, std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j <= hi; ++j)
        cur[j] = cost[j - lo] + std::min({prev[j - 1], prev[j], cur[j - 1]});
}

void gemm_nn_scalar(std::size_t M, std::size_t N, std::size_t K, const double* A, std::size_t lda,
                    const double* B, std::size_t ldb, double* C, std::size_t ldc, bool accumulate) {
    for (std::size_t i = 0; i < M; ++i) {
        double* c = C + i * ldc;
        if (!accumulate) std::fill(c, c + N, 0.0);
        for (std::size_t k = 0; k < K; ++k) {
            const double aik = A[i * lda + k];
            const double* b = B + k * ldb;
            for (std::size_t j = 0; j < N; ++j) c[j] = c[j] + aik * b[j];
        }
    }
}

void gemm_tn_scalar(std::size_t M, std::size_t N, std::size_t K, const double* A, std::size_t lda,
                    const double* B, std::size_t ldb, double* C, std::size_t ldc, bool accumulate) {
    if (!accumulate)
        for (std::size_t i = 0; i < M; ++i) std::fill(C + i * ldc, C + i * ldc + N, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        const double* b = B + k * ldb;
        for (std::size_t i = 0; i < M; ++i) {
            const double aki = A[k * lda + i];
            double* c = C + i * ldc;
            for (std::size_t j = 0; j < N; ++j) c[j] = c[j] + aki * b[j];
        }
    }
}

void relu_scalar(double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void adam_scalar(double* w, const double* g, double* m, double* v, std::size_t n, double lr, double beta1,
                 double beta2, double eps, double corr1, double corr2) {
    const double one_m_b1 = 1.0 - beta1;
    const double one_m_b2 = 1.0 - beta2;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = beta1 * m[i] + one_m_b1 * g[i];
        v[i] = beta2 * v[i] + one_m_b2 * (g[i] * g[i]);
        const double mhat = m[i] / corr1;
        const double vhat = v[i] / corr2;
        w[i] = w[i] - lr * mhat / (std::sqrt(vhat) + eps);
    }
}

}  // namespace mldtw::simd::detail
