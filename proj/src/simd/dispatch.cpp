#include <atomic>
#include <cstdlib>
#include <string>

#include "kernel_table.hpp"
#include "lmcts/core/error.hpp"
#include "lmcts/simd/kernels.hpp"

namespace lmcts::simd {

namespace {

bool cpu_has_avx2() noexcept
{
#if defined(LMCTS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const detail::KernelTable& table_for(Backend b) noexcept
{
#if defined(LMCTS_HAVE_AVX2)
    if (b == Backend::avx2) {
        return detail::avx2_table();
    }
#endif
    (void)b;
    return detail::scalar_table();
}

Backend initial_backend() noexcept
{
    if (const char* env = std::getenv("LMCTS_SIMD")) {
        const std::string v(env);
        if (v == "scalar") {
            return Backend::scalar;
        }
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

struct Active {
    std::atomic<Backend> backend{initial_backend()};
    std::atomic<const detail::KernelTable*> table{&table_for(backend.load())};
};

Active& active()
{
    static Active a;
    return a;
}

inline const detail::KernelTable& k()
{
    return *active().table.load(std::memory_order_relaxed);
}

void check_len(bool ok, const char* what)
{
    if (!ok) {
        throw InvalidInput(std::string("simd kernel size mismatch: ") + what);
    }
}

} // namespace

std::string_view backend_name(Backend b) noexcept
{
    return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend b) noexcept
{
    return b == Backend::scalar || cpu_has_avx2();
}

Backend active_backend() noexcept
{
    return active().backend.load();
}

void set_backend(Backend b)
{
    if (!backend_available(b)) {
        throw InvalidInput("SIMD backend '" + std::string(backend_name(b)) + "' is not available on this build/CPU");
    }
    active().backend.store(b);
    active().table.store(&table_for(b));
}

double dot(std::span<const double> a, std::span<const double> b)
{
    check_len(a.size() == b.size(), "dot");
    return k().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y)
{
    check_len(x.size() == y.size(), "axpy");
    k().axpy(alpha, x.data(), y.data(), x.size());
}

void lmc_update(std::span<double> theta, std::span<const double> grad, std::span<const double> noise, double eta,
                double noise_scale)
{
    check_len(theta.size() == grad.size() && theta.size() == noise.size(), "lmc_update");
    k().lmc_update(theta.data(), grad.data(), noise.data(), eta, noise_scale, theta.size());
}

void symv(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> y)
{
    check_len(a.size() == n * n && x.size() == n && y.size() == n, "symv");
    k().gemv_rows(a.data(), n, n, x.data(), y.data());
}

void gemv_rows(std::span<const double> x, std::size_t rows, std::size_t cols, std::span<const double> v,
               std::span<double> out)
{
    check_len(x.size() >= rows * cols && v.size() == cols && out.size() >= rows, "gemv_rows");
    k().gemv_rows(x.data(), rows, cols, v.data(), out.data());
}

void gemv_t_rows(std::span<const double> x, std::size_t rows, std::size_t cols, std::span<const double> w,
                 std::span<double> out)
{
    check_len(x.size() >= rows * cols && w.size() >= rows && out.size() == cols, "gemv_t_rows");
    k().gemv_t_rows(x.data(), rows, cols, w.data(), out.data());
}

void logistic(std::span<const double> z, std::span<double> out)
{
    check_len(z.size() == out.size(), "logistic");
    k().logistic(z.data(), out.data(), z.size());
}

void logistic_residual(std::span<const double> z, std::span<const double> r, std::span<double> out)
{
    check_len(z.size() == r.size() && z.size() == out.size(), "logistic_residual");
    k().logistic_residual(z.data(), r.data(), out.data(), z.size());
}

void dense_forward(std::span<const double> wt, std::span<const double> bias, std::size_t in, std::size_t out,
                   std::span<const double> a, std::size_t n, std::span<double> z)
{
    check_len(wt.size() == in * out && bias.size() == out && a.size() >= n * in && z.size() >= n * out,
              "dense_forward");
    k().dense_forward(wt.data(), bias.data(), in, out, a.data(), n, z.data());
}

void dense_backward(std::span<const double> w, std::size_t in, std::size_t out, std::span<const double> a,
                    std::span<const double> dz, std::size_t n, std::span<double> dw, std::span<double> db,
                    std::span<double> da)
{
    check_len(w.size() == in * out && a.size() >= n * in && dz.size() >= n * out && dw.size() == in * out &&
                  db.size() == out && (da.empty() || da.size() >= n * in),
              "dense_backward");
    k().dense_backward(w.data(), in, out, a.data(), dz.data(), n, dw.data(), db.data(),
                       da.empty() ? nullptr : da.data());
}

void leaky_relu(std::span<const double> z, double alpha, std::span<double> out)
{
    check_len(z.size() == out.size(), "leaky_relu");
    k().leaky_relu(z.data(), alpha, out.data(), z.size());
}

void leaky_relu_backward(std::span<const double> z, double alpha, std::span<double> grad)
{
    check_len(z.size() == grad.size(), "leaky_relu_backward");
    k().leaky_relu_backward(z.data(), alpha, grad.data(), z.size());
}

} // namespace lmcts::simd
