#pragma once

#include "lmcts/models/loss.hpp"

namespace lmcts {

struct MinimizeResult {
    Vector theta;
    double loss = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false; // gradient_norm <= tol; otherwise max_iters was hit
};

// Deterministic gradient descent with Armijo backtracking. Trial steps use
// the Barzilai-Borwein length when available, so warm starts converge in a
// handful of iterations. Intended for the convex (linear, GLM) losses.
//
// Throws OptimizationFailure when the loss rises across 10 consecutive
// accepted steps or the line search cannot make progress.
MinimizeResult minimize(const LossSpec& spec, const Vector& theta0, int max_iters, double tol);

// Damped Newton iteration with the same stopping rule. Each iteration factors
// the d x d Hessian, so this is for low-dimensional baselines whose designs
// become ill-conditioned (a policy that keeps pulling one arm).
MinimizeResult minimize_newton(const LossSpec& spec, const Vector& theta0, int max_iters, double tol);

} // namespace lmcts
