#include "lmcts/sampler/closed_form.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "lmcts/core/error.hpp"

namespace lmcts {

GaussianLaw closed_form_law(std::span<const History> histories, std::span<const LmcSchedule> schedules,
                            const Vector& theta0)
{
    if (histories.size() != schedules.size()) {
        throw InvalidInput("closed_form_law: need one schedule per round");
    }
    const Eigen::Index d = theta0.size();
    GaussianLaw law{theta0, Matrix::Zero(d, d)};

    for (std::size_t i = 0; i < histories.size(); ++i) {
        const History& h = histories[i];
        const LmcSchedule& s = schedules[i];
        if (static_cast<Eigen::Index>(h.dim()) != d) {
            throw InvalidInput("closed_form_law: history dimension does not match theta0");
        }
        s.validate();

        Eigen::SelfAdjointEigenSolver<Matrix> eig(h.gram());
        if (eig.info() != Eigen::Success) {
            throw NumericalError("closed_form_law: eigendecomposition failed");
        }
        const Vector& lam = eig.eigenvalues();
        const Matrix& q = eig.eigenvectors();
        const double lmax = lam.maxCoeff();
        if (!(s.eta < 1.0 / (2.0 * lmax))) {
            std::ostringstream msg;
            msg << "closed_form_law: round " << i + 1 << " step size " << s.eta << " violates eta < 1/(2 lambda_max) = "
                << 1.0 / (2.0 * lmax);
            throw InvalidSchedule(msg.str());
        }
        if (s.epoch_length == 0) {
            continue;
        }

        const double k = static_cast<double>(s.epoch_length);
        const double inv_beta = std::isinf(s.beta) ? 0.0 : 1.0 / s.beta;
        Vector pow_k(d), stationary(d);
        for (Eigen::Index j = 0; j < d; ++j) {
            const double a = 1.0 - 2.0 * s.eta * lam[j];
            pow_k[j] = std::pow(a, k);
            stationary[j] = inv_beta * (1.0 - pow_k[j] * pow_k[j]) / (lam[j] * (1.0 + a));
        }
        const Matrix contraction = q * pow_k.asDiagonal() * q.transpose();
        const Vector qb = q.transpose() * h.moment();
        const Vector theta_hat = q * lam.cwiseInverse().cwiseProduct(qb);

        law.mean = contraction * law.mean + (theta_hat - contraction * theta_hat);
        law.covariance = contraction * law.covariance * contraction + q * stationary.asDiagonal() * q.transpose();
        law.covariance = 0.5 * (law.covariance + law.covariance.transpose()).eval();
    }
    return law;
}

} // namespace lmcts
