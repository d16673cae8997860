#pragma once

#include <cstddef>

namespace lmcts::simd::detail {

struct KernelTable {
    double (*dot)(const double* a, const double* b, std::size_t n);
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    void (*lmc_update)(double* theta, const double* grad, const double* noise, double eta, double noise_scale,
                       std::size_t n);
    void (*gemv_rows)(const double* x, std::size_t rows, std::size_t cols, const double* v, double* out);
    void (*gemv_t_rows)(const double* x, std::size_t rows, std::size_t cols, const double* w, double* out);
    void (*logistic)(const double* z, double* out, std::size_t n);
    void (*logistic_residual)(const double* z, const double* r, double* out, std::size_t n);
    void (*dense_forward)(const double* wt, const double* bias, std::size_t in, std::size_t out, const double* a,
                          std::size_t n, double* z);
    void (*dense_backward)(const double* w, std::size_t in, std::size_t out, const double* a, const double* dz,
                           std::size_t n, double* dw, double* db, double* da);
    void (*leaky_relu)(const double* z, double alpha, double* out, std::size_t n);
    void (*leaky_relu_backward)(const double* z, double alpha, double* grad, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
#if defined(LMCTS_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

} // namespace lmcts::simd::detail
