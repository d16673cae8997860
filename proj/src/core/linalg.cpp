#include "lmcts/core/linalg.hpp"

#include <cmath>
#include <sstream>

#include "lmcts/core/error.hpp"
#include "lmcts/simd/kernels.hpp"

namespace lmcts::linalg {

namespace {
thread_local std::uint64_t g_factorizations = 0;

Vector power_start(Eigen::Index n)
{
    // fixed, non-degenerate start vector (no RNG involvement)
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = 1.0 + 0.5 * std::sin(1.0 + 2.3 * static_cast<double>(i));
    }
    return v.normalized();
}

// Power iteration on a symmetric PSD operator given as a matvec.
template <class Apply>
double power_iterate(Eigen::Index n, Apply&& apply, int max_iters, double tol)
{
    Vector v = power_start(n);
    Vector w(n);
    double estimate = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        apply(v, w);
        const double rayleigh = v.dot(w);
        const double norm = w.norm();
        if (norm == 0.0) {
            return 0.0;
        }
        v = w / norm;
        if (it > 0 && std::abs(rayleigh - estimate) <= tol * std::max(1.0, std::abs(rayleigh))) {
            return rayleigh;
        }
        estimate = rayleigh;
    }
    apply(v, w);
    return v.dot(w);
}

} // namespace

std::uint64_t factorization_count() noexcept
{
    return g_factorizations;
}

SpdFactor::SpdFactor(const Matrix& spd) : llt_(spd)
{
    ++g_factorizations;
    if (spd.rows() != spd.cols()) {
        throw InvalidInput("SpdFactor: matrix is not square");
    }
    if (llt_.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "matrix is not numerically positive definite (dim " << spd.rows() << ", diag range ["
            << spd.diagonal().minCoeff() << ", " << spd.diagonal().maxCoeff() << "])";
        throw NumericalError(msg.str());
    }
    const double rc = llt_.rcond();
    if (!(rc > 1e-15)) {
        std::ostringstream msg;
        msg << "matrix is numerically singular: reciprocal condition estimate " << rc;
        throw NumericalError(msg.str());
    }
}

Vector SpdFactor::solve(const Vector& b) const
{
    return llt_.solve(b);
}

double SpdFactor::inv_quad(const Vector& x) const
{
    const Vector y = llt_.matrixL().solve(x);
    return y.squaredNorm();
}

Vector SpdFactor::inv_sqrt_t(const Vector& z) const
{
    return llt_.matrixU().solve(z);
}

double lambda_max_power(const Matrix& a, int max_iters, double tol)
{
    return power_iterate(
        a.rows(), [&](const Vector& v, Vector& w) { symmetric_matvec(a, v, w); }, max_iters, tol);
}

SpectralBounds spectral_bounds_power(const Matrix& a, int max_iters, double tol)
{
    SpectralBounds out;
    out.lambda_max = lambda_max_power(a, max_iters, tol);
    const double shift = out.lambda_max;
    const double gap = power_iterate(
        a.rows(),
        [&](const Vector& v, Vector& w) {
            symmetric_matvec(a, v, w);
            w = shift * v - w;
        },
        max_iters, tol);
    out.lambda_min = shift - gap;
    return out;
}

void symmetric_matvec(const Matrix& a, const Vector& x, Vector& y)
{
    const auto n = static_cast<std::size_t>(a.rows());
    y.resize(a.rows());
    // column-major storage of a symmetric matrix reads identically as row-major
    simd::symv({a.data(), n * n}, n, as_span(x), as_span(y));
}

} // namespace lmcts::linalg
