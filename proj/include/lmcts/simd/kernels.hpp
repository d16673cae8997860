#pragma once

// Data-parallel inner loops shared by the models and the sampler.
//
// Each kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The variant is chosen once at startup from CPUID; the
// LMCTS_SIMD environment variable (`scalar` or `avx2`) overrides the choice.
// All matrices are dense row-major.

#include <cstddef>
#include <span>
#include <string_view>

namespace lmcts::simd {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b) noexcept;
bool backend_available(Backend b) noexcept;
Backend active_backend() noexcept;
// Throws InvalidInput when the backend is not compiled in or not supported
// by the CPU.
void set_backend(Backend b);

double dot(std::span<const double> a, std::span<const double> b);
// y += alpha x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
// theta <- theta - eta * grad + noise_scale * noise
void lmc_update(std::span<double> theta, std::span<const double> grad, std::span<const double> noise, double eta,
                double noise_scale);
// y = A x, A is n x n
void symv(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> y);
// out_i = X_i . v, X is rows x cols
void gemv_rows(std::span<const double> x, std::size_t rows, std::size_t cols, std::span<const double> v,
               std::span<double> out);
// out += sum_i w_i X_i
void gemv_t_rows(std::span<const double> x, std::size_t rows, std::size_t cols, std::span<const double> w,
                 std::span<double> out);
// out_i = 1 / (1 + exp(-z_i))
void logistic(std::span<const double> z, std::span<double> out);
// out_i = sigmoid(z_i) - r_i
void logistic_residual(std::span<const double> z, std::span<const double> r, std::span<double> out);

// Fully connected layer over a batch: Z = A W^T + b.
// wt is the transposed weight (in x out), a is n x in, z is n x out.
void dense_forward(std::span<const double> wt, std::span<const double> bias, std::size_t in, std::size_t out,
                   std::span<const double> a, std::size_t n, std::span<double> z);
// Backward pass of dense_forward. w is out x in. Accumulates dw (out x in)
// and db (out); overwrites da (n x in) unless it is empty.
void dense_backward(std::span<const double> w, std::size_t in, std::size_t out, std::span<const double> a,
                    std::span<const double> dz, std::size_t n, std::span<double> dw, std::span<double> db,
                    std::span<double> da);
// out_i = z_i > 0 ? z_i : alpha z_i
void leaky_relu(std::span<const double> z, double alpha, std::span<double> out);
// grad_i *= (z_i > 0 ? 1 : alpha)
void leaky_relu_backward(std::span<const double> z, double alpha, std::span<double> grad);

} // namespace lmcts::simd
