#pragma once

#include <cstddef>

#include "lmcts/sampler/lmc.hpp"

namespace lmcts {

// Default experimental schedule: eta_t = eta0 / t, constant temperature,
// fixed epoch length.
struct PracticalSchedule {
    double eta0 = 0.5;
    double beta_inv = 0.01;
    std::size_t epoch_length = 100;

    // Schedule for round t >= 1.
    LmcSchedule at(std::size_t t) const;
};

// Parameters that drive the regret-bound schedule for linear bandits.
struct TheoryParams {
    double noise_scale = 1.0; // sub-Gaussian constant R
    double delta = 0.1;
    std::size_t horizon = 1000;
};

// Regret-bound schedule for round t from the current gram matrix:
//   eta     = 1 / (4 lambda_max(V))
//   K       = ceil(kappa * log(3 R sqrt(2 d T log(T^3 / delta))))
//   1/beta  = 4 R sqrt(d log(T^3 / delta))
// with kappa = lambda_max / lambda_min. The extreme eigenvalues come from
// power iteration (50 iterations, tol 1e-8), so no factorization is done.
LmcSchedule theory_schedule(const Matrix& gram, double noise_scale, double delta, std::size_t horizon,
                            std::size_t dim);

inline LmcSchedule theory_schedule(const Matrix& gram, const TheoryParams& p)
{
    return theory_schedule(gram, p.noise_scale, p.delta, p.horizon, static_cast<std::size_t>(gram.rows()));
}

} // namespace lmcts
