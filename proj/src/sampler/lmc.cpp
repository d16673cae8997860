#include "lmcts/sampler/lmc.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "lmcts/core/error.hpp"
#include "lmcts/core/linalg.hpp"
#include "lmcts/simd/kernels.hpp"

namespace lmcts {

double LmcSchedule::noise_scale() const
{
    return std::isinf(beta) ? 0.0 : std::sqrt(2.0 * eta / beta);
}

void LmcSchedule::validate() const
{
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw InvalidSchedule("LMC schedule: step size must be positive and finite");
    }
    if (!(beta > 0.0)) {
        throw InvalidSchedule("LMC schedule: inverse temperature must be positive");
    }
}

Vector lmc_step(const Vector& theta, const Vector& grad, double eta, double beta, const Vector& noise)
{
    if (theta.size() != grad.size() || theta.size() != noise.size()) {
        throw InvalidInput("lmc_step: dimension mismatch");
    }
    const LmcSchedule s{eta, beta, 1};
    s.validate();
    if (!theta.allFinite() || !grad.allFinite() || !noise.allFinite()) {
        throw NumericalError("lmc_step: non-finite input");
    }
    Vector out = theta;
    simd::lmc_update(as_span(out), as_span(grad), as_span(noise), eta, s.noise_scale());
    return out;
}

namespace {

[[noreturn]] void diverged(const LossSpec& spec, const LmcSchedule& sched, std::size_t round, std::size_t step)
{
    std::ostringstream msg;
    msg << "LMC chain diverged in round " << round + 1 << " at inner step " << step << " (eta = " << sched.eta;
    if (!std::holds_alternative<MlpModel>(spec.model())) {
        // the data Hessian is bounded by a multiple of the gram matrix
        const double lmax = linalg::lambda_max_power(spec.history().gram());
        msg << ", lambda_max(V) ~ " << lmax << "; the linear loss needs eta < " << 1.0 / (2.0 * lmax);
    }
    msg << "); reduce the step size";
    throw DivergenceError(msg.str());
}

} // namespace

void LangevinSampler::run_epoch(ChainState& state, const LossSpec& spec, const LmcSchedule& sched, RngStream& rng)
{
    sched.validate();
    const History& h = spec.history();
    if (state.round != h.round()) {
        std::ostringstream msg;
        msg << "run_epoch: chain has completed " << state.round << " rounds but the history holds " << h.round()
            << " observations";
        throw InvalidInput(msg.str());
    }
    if (static_cast<std::size_t>(state.theta.size()) != spec.parameter_count()) {
        throw InvalidInput("run_epoch: chain dimension does not match the model");
    }
    const std::size_t n = h.round();
    const bool subsample = batch_size_ > 0 && n > batch_size_;
    if (subsample && pool_.size() != n) {
        pool_.resize(n);
        std::iota(pool_.begin(), pool_.end(), std::size_t{0});
    }
    const double noise_scale = sched.noise_scale();
    noise_.resize(state.theta.size());
    for (std::size_t k = 0; k < sched.epoch_length; ++k) {
        if (subsample) {
            // partial Fisher-Yates: first batch_size_ entries of pool_ become the batch
            for (std::size_t i = 0; i < batch_size_; ++i) {
                const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
                std::swap(pool_[i], pool_[j]);
            }
            batch_.assign(pool_.begin(), pool_.begin() + static_cast<std::ptrdiff_t>(batch_size_));
            eval_.gradient_subset(spec, state.theta, batch_, grad_);
        } else {
            eval_.gradient(spec, state.theta, grad_);
        }
        if (noise_scale > 0.0) {
            rng.fill_normal(as_span(noise_));
        } else {
            noise_.setZero();
        }
        simd::lmc_update(as_span(state.theta), as_span(grad_), as_span(noise_), sched.eta, noise_scale);
        const double peak = state.theta.cwiseAbs().maxCoeff();
        if (!(peak <= kDivergenceBound)) {
            diverged(spec, sched, state.round, k + 1);
        }
    }
    state.round += 1;
    state.inner = sched.epoch_length;
}

ChainState run_epoch(ChainState state, const LossSpec& spec, const LmcSchedule& sched, RngStream& rng)
{
    LangevinSampler sampler;
    sampler.run_epoch(state, spec, sched, rng);
    return state;
}

} // namespace lmcts
