#include "lmcts/models/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lmcts/core/error.hpp"
#include "lmcts/core/linalg.hpp"

namespace lmcts {

namespace {
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;
constexpr int kIncreaseLimit = 10;
// loss sums over many rows carry rounding noise of this many ulps
constexpr double kLossNoise = 1024.0;
} // namespace

MinimizeResult minimize(const LossSpec& spec, const Vector& theta0, int max_iters, double tol)
{
    if (std::holds_alternative<MlpModel>(spec.model())) {
        throw UnsupportedOperation("minimize: only the linear and GLM losses are supported");
    }
    if (max_iters < 0 || !(tol >= 0.0)) {
        throw InvalidInput("minimize: max_iters must be >= 0 and tol >= 0");
    }

    GradientEvaluator eval;
    MinimizeResult res;
    res.theta = theta0;
    res.loss = loss(spec, res.theta);
    Vector g;
    eval.gradient(spec, res.theta, g);
    res.gradient_norm = g.norm();

    Vector prev_theta, prev_g, trial_theta, trial_g;
    int increases = 0;
    for (int it = 0; it < max_iters; ++it) {
        if (res.gradient_norm <= tol) {
            res.converged = true;
            return res;
        }
        double step = 1.0 / std::max(1.0, res.gradient_norm);
        if (it > 0) {
            const Vector s = res.theta - prev_theta;
            const Vector y = g - prev_g;
            const double sy = s.dot(y);
            if (sy > 0.0) {
                step = s.squaredNorm() / sy;
            }
        }
        const double g2 = res.gradient_norm * res.gradient_norm;
        double trial_loss = 0.0;
        bool have_trial_gradient = false;
        const double roundoff = kLossNoise * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(res.loss));
        int backtracks = 0;
        for (;; ++backtracks) {
            trial_theta = res.theta - step * g;
            trial_loss = loss(spec, trial_theta);
            if (std::isfinite(trial_loss) && trial_loss <= res.loss - kArmijo * step * g2) {
                break;
            }
            // near the optimum the loss stops resolving progress; fall back to the gradient norm
            if (std::isfinite(trial_loss) && trial_loss <= res.loss + roundoff) {
                eval.gradient(spec, trial_theta, trial_g);
                if (trial_g.norm() < res.gradient_norm) {
                    have_trial_gradient = true;
                    break;
                }
            }
            if (backtracks >= kMaxBacktracks) {
                // no representable decrease along -g: numerically stationary
                res.iterations = it;
                return res;
            }
            step *= 0.5;
        }
        increases = trial_loss > res.loss ? increases + 1 : 0;
        if (increases >= kIncreaseLimit || !std::isfinite(trial_loss)) {
            std::ostringstream msg;
            msg << "minimize: loss diverging at iteration " << it << " (loss " << trial_loss << ")";
            throw OptimizationFailure(msg.str());
        }
        prev_theta = res.theta;
        prev_g = g;
        res.theta = trial_theta;
        res.loss = trial_loss;
        if (have_trial_gradient) {
            g = trial_g;
        } else {
            eval.gradient(spec, res.theta, g);
        }
        res.gradient_norm = g.norm();
        res.iterations = it + 1;
    }
    res.converged = res.gradient_norm <= tol;
    return res;
}

MinimizeResult minimize_newton(const LossSpec& spec, const Vector& theta0, int max_iters, double tol)
{
    if (std::holds_alternative<MlpModel>(spec.model())) {
        throw UnsupportedOperation("minimize_newton: only the linear and GLM losses are supported");
    }
    if (max_iters < 0 || !(tol >= 0.0)) {
        throw InvalidInput("minimize_newton: max_iters must be >= 0 and tol >= 0");
    }

    GradientEvaluator eval;
    MinimizeResult res;
    res.theta = theta0;
    res.loss = loss(spec, res.theta);
    Vector g;
    eval.gradient(spec, res.theta, g);
    res.gradient_norm = g.norm();

    Vector trial_theta, trial_g;
    for (int it = 0; it < max_iters; ++it) {
        if (res.gradient_norm <= tol) {
            res.converged = true;
            return res;
        }
        const Vector dir = -linalg::SpdFactor(hessian(spec, res.theta)).solve(g);
        const double slope = g.dot(dir);
        const double roundoff = kLossNoise * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(res.loss));
        double step = 1.0;
        double trial_loss = 0.0;
        bool have_trial_gradient = false;
        for (int backtracks = 0;; ++backtracks) {
            trial_theta = res.theta + step * dir;
            trial_loss = loss(spec, trial_theta);
            if (std::isfinite(trial_loss) && trial_loss <= res.loss + kArmijo * step * slope) {
                break;
            }
            if (std::isfinite(trial_loss) && trial_loss <= res.loss + roundoff) {
                eval.gradient(spec, trial_theta, trial_g);
                if (trial_g.norm() < res.gradient_norm) {
                    have_trial_gradient = true;
                    break;
                }
            }
            if (backtracks >= kMaxBacktracks) {
                res.iterations = it;
                return res;
            }
            step *= 0.5;
        }
        res.theta = trial_theta;
        res.loss = trial_loss;
        if (have_trial_gradient) {
            g = trial_g;
        } else {
            eval.gradient(spec, res.theta, g);
        }
        res.gradient_norm = g.norm();
        res.iterations = it + 1;
    }
    res.converged = res.gradient_norm <= tol;
    return res;
}

} // namespace lmcts
