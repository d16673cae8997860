#include "lmcts/sampler/schedule.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lmcts/core/error.hpp"
#include "lmcts/core/linalg.hpp"

namespace lmcts {

LmcSchedule PracticalSchedule::at(std::size_t t) const
{
    if (t == 0) {
        throw InvalidInput("PracticalSchedule: rounds are numbered from 1");
    }
    LmcSchedule s;
    s.eta = eta0 / static_cast<double>(t);
    s.beta = beta_inv > 0.0 ? 1.0 / beta_inv : std::numeric_limits<double>::infinity();
    s.epoch_length = epoch_length;
    return s;
}

LmcSchedule theory_schedule(const Matrix& gram, double noise_scale, double delta, std::size_t horizon,
                            std::size_t dim)
{
    if (!(delta > 0.0 && delta < 1.0) || horizon < 2 || !(noise_scale > 0.0) || dim == 0) {
        throw InvalidInput("theory_schedule: need 0 < delta < 1, T >= 2, R > 0, d >= 1");
    }
    if (gram.rows() != gram.cols() || gram.rows() == 0) {
        throw InvalidInput("theory_schedule: gram must be square and non-empty");
    }
    const auto bounds = linalg::spectral_bounds_power(gram);
    if (!(bounds.lambda_min > 0.0) || !std::isfinite(bounds.lambda_max)) {
        std::ostringstream msg;
        msg << "theory_schedule: gram is not positive definite (lambda_min ~ " << bounds.lambda_min << ")";
        throw NumericalError(msg.str());
    }
    const double d = static_cast<double>(dim);
    const double T = static_cast<double>(horizon);
    const double log_term = std::log(T * T * T / delta);
    const double kappa = bounds.condition();

    LmcSchedule s;
    s.eta = 1.0 / (4.0 * bounds.lambda_max);
    const double k = std::ceil(kappa * std::log(3.0 * noise_scale * std::sqrt(2.0 * d * T * log_term)));
    s.epoch_length = k < 1.0 ? 1 : static_cast<std::size_t>(k);
    s.beta = 1.0 / (4.0 * noise_scale * std::sqrt(d * log_term));
    return s;
}

} // namespace lmcts
