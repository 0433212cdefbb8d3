#pragma once

#include <cstddef>

namespace mldtw::simd::detail {

void row_costs_scalar(const double*, const double*, std::size_t, std::size_t, std::size_t, std::size_t, double*);
void dtw_row_scalar(const double*, double*, const double*, std::size_t, std::size_t);
void gemm_nn_scalar(std::size_t, std::size_t, std::size_t, const double*, std::size_t, const double*, std::size_t,
                    double*, std::size_t, bool);
void gemm_tn_scalar(std::size_t, std::size_t, std::size_t, const double*, std::size_t, const double*, std::size_t,
                    double*, std::size_t, bool);
void relu_scalar(double*, std::size_t);
void adam_scalar(double*, const double*, double*, double*, std::size_t, double, double, double, double, double,
                 double);

#if defined(MLDTW_HAVE_AVX2)
void row_costs_avx2(const double*, const double*, std::size_t, std::size_t, std::size_t, std::size_t, double*);
void dtw_row_avx2(const double*, double*, const double*, std::size_t, std::size_t);
void gemm_nn_avx2(std::size_t, std::size_t, std::size_t, const double*, std::size_t, const double*, std::size_t,
                  double*, std::size_t, bool);
void gemm_tn_avx2(std::size_t, std::size_t, std::size_t, const double*, std::size_t, const double*, std::size_t,
                  double*, std::size_t, bool);
void relu_avx2(double*, std::size_t);
void adam_avx2(double*, const double*, double*, double*, std::size_t, double, double, double, double, double,
               double);
#endif

}  // namespace mldtw::simd::detail
