#pragma once

#include <span>

#include "lmcts/core/history.hpp"
#include "lmcts/sampler/lmc.hpp"

namespace lmcts {

struct GaussianLaw {
    Vector mean;
    Matrix covariance;
};

// Exact law of the chain state after round t of warm-started LMC on the
// ridge loss sum (x^T theta - r)^2 + lambda ||theta||^2.
//
// histories[i] and schedules[i] describe round i + 1: the gram V and moment
// b seen in that round and its (eta, beta, K). With A = I - 2 eta V and
// theta_hat = V^{-1} b, one round maps N(mu, S) to
//   mu' = A^K mu + (I - A^K) theta_hat
//   S'  = A^K S A^K + (1/beta) (I - A^{2K}) V^{-1} (I + A)^{-1}
// starting from the point mass at theta0. Each round's matrices are built
// from the eigendecomposition of V.
//
// Throws InvalidSchedule unless eta < 1 / (2 lambda_max(V)) in every round.
GaussianLaw closed_form_law(std::span<const History> histories, std::span<const LmcSchedule> schedules,
                            const Vector& theta0);

} // namespace lmcts
