// Scalar reference kernels. These define the semantics the vector variants
// are tested against.

#include <cmath>

#include "kernel_table.hpp"

namespace lmcts::simd::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += a[i] * b[i];
    }
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += alpha * x[i];
    }
}

void lmc_update(double* theta, const double* grad, const double* noise, double eta, double noise_scale,
                std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        theta[i] = theta[i] - eta * grad[i] + noise_scale * noise[i];
    }
}

void gemv_rows(const double* x, std::size_t rows, std::size_t cols, const double* v, double* out)
{
    for (std::size_t i = 0; i < rows; ++i) {
        out[i] = dot(x + i * cols, v, cols);
    }
}

void gemv_t_rows(const double* x, std::size_t rows, std::size_t cols, const double* w, double* out)
{
    for (std::size_t i = 0; i < rows; ++i) {
        axpy(w[i], x + i * cols, out, cols);
    }
}

double sigmoid(double z)
{
    // clamp keeps exp finite; sigmoid is 0/1 to double precision beyond it
    const double c = z < -700.0 ? -700.0 : (z > 700.0 ? 700.0 : z);
    return 1.0 / (1.0 + std::exp(-c));
}

void logistic(const double* z, double* out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = sigmoid(z[i]);
    }
}

void logistic_residual(const double* z, const double* r, double* out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = sigmoid(z[i]) - r[i];
    }
}

void dense_forward(const double* wt, const double* bias, std::size_t in, std::size_t out, const double* a,
                   std::size_t n, double* z)
{
    for (std::size_t s = 0; s < n; ++s) {
        double* zs = z + s * out;
        const double* as = a + s * in;
        for (std::size_t j = 0; j < out; ++j) {
            zs[j] = bias[j];
        }
        for (std::size_t k = 0; k < in; ++k) {
            axpy(as[k], wt + k * out, zs, out);
        }
    }
}

void dense_backward(const double* w, std::size_t in, std::size_t out, const double* a, const double* dz,
                    std::size_t n, double* dw, double* db, double* da)
{
    for (std::size_t s = 0; s < n; ++s) {
        const double* as = a + s * in;
        const double* gs = dz + s * out;
        double* das = da ? da + s * in : nullptr;
        if (das) {
            for (std::size_t k = 0; k < in; ++k) {
                das[k] = 0.0;
            }
        }
        for (std::size_t j = 0; j < out; ++j) {
            const double g = gs[j];
            db[j] += g;
            axpy(g, as, dw + j * in, in);
            if (das) {
                axpy(g, w + j * in, das, in);
            }
        }
    }
}

void leaky_relu(const double* z, double alpha, double* out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = z[i] > 0.0 ? z[i] : alpha * z[i];
    }
}

void leaky_relu_backward(const double* z, double alpha, double* grad, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        if (!(z[i] > 0.0)) {
            grad[i] *= alpha;
        }
    }
}

constexpr KernelTable kTable{
    dot,      axpy,          lmc_update,     gemv_rows,  gemv_t_rows,        logistic,
    logistic_residual, dense_forward, dense_backward, leaky_relu, leaky_relu_backward,
};

} // namespace

const KernelTable& scalar_table() noexcept
{
    return kTable;
}

} // namespace lmcts::simd::detail
