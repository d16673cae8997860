#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "lmcts/core/rng.hpp"
#include "lmcts/models/loss.hpp"

namespace lmcts {

// Per-round Langevin parameters. beta is the inverse temperature; an
// infinite beta switches the noise off and the epoch becomes plain gradient
// descent.
struct LmcSchedule {
    double eta = 0.0;
    double beta = 1.0;
    std::size_t epoch_length = 1;

    double noise_scale() const;
    // Throws InvalidSchedule unless eta > 0 and beta > 0.
    void validate() const;

    friend bool operator==(const LmcSchedule&, const LmcSchedule&) = default;
};

// Chain position. `round` counts completed epochs; the epoch for round t
// starts from where round t-1 stopped (warm start).
struct ChainState {
    Vector theta;
    std::size_t round = 0;
    std::size_t inner = 0;
};

// theta - eta grad + sqrt(2 eta / beta) noise
Vector lmc_step(const Vector& theta, const Vector& grad, double eta, double beta, const Vector& noise);

// Coordinates beyond this magnitude abort the epoch with DivergenceError.
inline constexpr double kDivergenceBound = 1e12;

// Runs LMC epochs with reusable buffers. One sampler per chain.
class LangevinSampler {
public:
    // batch_size 0 uses the full gradient; otherwise each step estimates the
    // gradient on a uniformly drawn subset of that many observations
    // (rescaled to be unbiased) once the transcript exceeds the batch size.
    explicit LangevinSampler(std::size_t batch_size = 0) : batch_size_(batch_size) {}

    std::size_t batch_size() const noexcept { return batch_size_; }

    // Applies sched.epoch_length steps of the LMC update against spec,
    // drawing fresh N(0, I) noise per step from rng. Requires
    // state.round == spec.history().round().
    void run_epoch(ChainState& state, const LossSpec& spec, const LmcSchedule& sched, RngStream& rng);

private:
    std::size_t batch_size_;
    GradientEvaluator eval_;
    Vector grad_;
    Vector noise_;
    std::vector<std::size_t> pool_;
    std::vector<std::size_t> batch_;
};

// Value-returning convenience around LangevinSampler (full gradient).
ChainState run_epoch(ChainState state, const LossSpec& spec, const LmcSchedule& sched, RngStream& rng);

} // namespace lmcts
