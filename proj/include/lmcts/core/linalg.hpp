#pragma once

#include <cstdint>

#include <Eigen/Cholesky>

#include "lmcts/core/types.hpp"

namespace lmcts::linalg {

// Number of dense d x d factorizations performed on the calling thread.
// Every SpdFactor construction increments it; agents whose selection path
// must stay factorization-free are checked against this counter.
std::uint64_t factorization_count() noexcept;

// Cholesky factor V = L L^T of a symmetric positive definite matrix.
class SpdFactor {
public:
    explicit SpdFactor(const Matrix& spd);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(llt_.matrixLLT().rows()); }

    // V^{-1} b
    Vector solve(const Vector& b) const;
    // x^T V^{-1} x, computed as ||L^{-1} x||^2
    double inv_quad(const Vector& x) const;
    // L^{-T} z; has covariance V^{-1} when z ~ N(0, I)
    Vector inv_sqrt_t(const Vector& z) const;
    // Reciprocal condition estimate from the factorization.
    double rcond() const { return llt_.rcond(); }

private:
    Eigen::LLT<Matrix> llt_;
};

struct SpectralBounds {
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    double condition() const { return lambda_max / lambda_min; }
};

// Largest eigenvalue of a symmetric PSD matrix by power iteration.
double lambda_max_power(const Matrix& a, int max_iters = 50, double tol = 1e-8);

// Extreme eigenvalues of a symmetric PSD matrix by power iteration: the
// smallest comes from the shifted matrix lambda_max I - A. No factorization.
SpectralBounds spectral_bounds_power(const Matrix& a, int max_iters = 50, double tol = 1e-8);

// y = A x for a dense symmetric A, through the dispatched SIMD kernel.
void symmetric_matvec(const Matrix& a, const Vector& x, Vector& y);

} // namespace lmcts::linalg
