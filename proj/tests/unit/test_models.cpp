#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "lmcts/core/error.hpp"
#include "lmcts/core/rng.hpp"
#include "lmcts/models/loss.hpp"
#include "lmcts/models/minimize.hpp"
#include "lmcts/models/model.hpp"

using namespace lmcts;

namespace {

History random_history(std::size_t d, std::size_t n, double lambda, bool binary, std::uint64_t seed)
{
    RngStream r(seed, 99);
    History h(d, lambda);
    Vector x(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i) {
        r.fill_normal(as_span(x));
        x /= x.norm();
        const double y = binary ? (r.uniform() < 0.4 ? 1.0 : 0.0) : r.normal();
        h.observe(x, y);
    }
    return h;
}

Vector random_theta(std::size_t p, std::uint64_t seed, double scale = 1.0)
{
    RngStream r(seed, 98);
    Vector t(static_cast<Eigen::Index>(p));
    r.fill_normal(as_span(t));
    return scale * t;
}

// Central differences of the loss, coordinate by coordinate.
Vector fd_gradient(const LossSpec& spec, Vector theta, double h)
{
    Vector g(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        const double keep = theta[i];
        theta[i] = keep + h;
        const double up = loss(spec, theta);
        theta[i] = keep - h;
        const double dn = loss(spec, theta);
        theta[i] = keep;
        g[i] = (up - dn) / (2.0 * h);
    }
    return g;
}

// Naive network forward for one input, written independently of the kernels.
double naive_mlp(const MlpModel& m, const std::vector<double>& x, const Vector& theta)
{
    std::vector<double> a = x;
    const auto& layers = m.layers();
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& L = layers[l];
        std::vector<double> z(L.out);
        for (std::size_t o = 0; o < L.out; ++o) {
            double s = theta[static_cast<Eigen::Index>(L.bias_offset + o)];
            for (std::size_t i = 0; i < L.in; ++i) {
                s += theta[static_cast<Eigen::Index>(L.weight_offset + o * L.in + i)] * a[i];
            }
            const bool last = l + 1 == layers.size();
            z[o] = last || s > 0.0 ? s : m.alpha() * s;
        }
        a = z;
    }
    return a[0];
}

} // namespace

TEST_SUITE("models")
{
    TEST_CASE("linear loss matches its definition")
    {
        const History h = random_history(3, 10, 1.5, false, 1);
        const RewardModel m = LinearModel{3};
        const LossSpec spec(m, h, 1.5);
        const Vector th = random_theta(3, 2);
        double ref = 1.5 * th.squaredNorm();
        for (std::size_t i = 0; i < h.round(); ++i) {
            double f = 0.0;
            for (std::size_t j = 0; j < 3; ++j) {
                f += h.feature(i)[j] * th[static_cast<Eigen::Index>(j)];
            }
            ref += (f - h.rewards()[i]) * (f - h.rewards()[i]);
        }
        CHECK(loss(spec, th) == doctest::Approx(ref).epsilon(1e-12));
        // the gram form of the gradient, 2 (V theta - b)
        const Vector g = loss_gradient(spec, th);
        CHECK((g - 2.0 * (h.gram() * th - h.moment())).cwiseAbs().maxCoeff() < 1e-10);
    }

    TEST_CASE("GLM cumulant is stable and has the link as derivative")
    {
        const GlmModel glm{2, Link::logistic};
        CHECK(std::isfinite(glm.cumulant(800.0)));
        CHECK(glm.cumulant(800.0) == doctest::Approx(800.0));
        CHECK(glm.cumulant(-800.0) >= 0.0);
        CHECK(glm.cumulant(0.0) == doctest::Approx(std::log(2.0)));
        for (double z : {-5.0, -0.3, 0.0, 1.2, 7.0}) {
            const double h = 1e-5;
            CHECK((glm.cumulant(z + h) - glm.cumulant(z - h)) / (2 * h) == doctest::Approx(glm.mean(z)).epsilon(1e-8));
            CHECK((glm.mean(z + h) - glm.mean(z - h)) / (2 * h) ==
                  doctest::Approx(glm.mean_derivative(z)).epsilon(1e-7));
        }
        const GlmModel id{2, Link::identity};
        CHECK(id.mean(3.0) == 3.0);
        CHECK(id.cumulant(3.0) == doctest::Approx(4.5));
    }

    TEST_CASE("gradients match central differences")
    {
        struct Case {
            RewardModel model;
            bool binary;
        };
        std::vector<Case> cases;
        cases.push_back({LinearModel{4}, false});
        cases.push_back({GlmModel{4, Link::logistic}, true});
        cases.push_back({GlmModel{4, Link::identity}, false});
        cases.push_back({MlpModel({4, 6, 5, 1}, 0.1), false});
        std::uint64_t seed = 10;
        for (const auto& c : cases) {
            for (int trial = 0; trial < 5; ++trial) {
                const History h = random_history(4, 12, 0.8, c.binary, ++seed);
                const LossSpec spec(c.model, h, 0.4);
                const Vector th = random_theta(spec.parameter_count(), ++seed, 0.7);
                const Vector g = loss_gradient(spec, th);
                const Vector fd = fd_gradient(spec, th, 1e-6);
                const double rel = (g - fd).norm() / std::max(1.0, fd.norm());
                CHECK(rel < 1e-6);
            }
        }
    }

    TEST_CASE("Hessians match differences of the gradient")
    {
        for (RewardModel m : {RewardModel{LinearModel{3}}, RewardModel{GlmModel{3, Link::logistic}}}) {
            const History h = random_history(3, 15, 1.0, true, 40);
            const LossSpec spec(m, h, 0.5);
            const Vector th = random_theta(3, 41);
            const Matrix hs = hessian(spec, th);
            for (Eigen::Index j = 0; j < 3; ++j) {
                const double e = 1e-6;
                const Vector col = (loss_gradient(spec, th + e * Vector::Unit(3, j)) -
                                    loss_gradient(spec, th - e * Vector::Unit(3, j))) /
                                   (2 * e);
                CHECK((col - hs.col(j)).cwiseAbs().maxCoeff() < 1e-5);
            }
        }
        const History h = random_history(2, 3, 1.0, false, 42);
        const RewardModel net = MlpModel({2, 3, 1}, 0.1);
        const LossSpec spec(net, h, 1.0);
        CHECK_THROWS_AS(hessian(spec, Vector::Zero(static_cast<Eigen::Index>(spec.parameter_count()))),
                        UnsupportedOperation);
    }

    TEST_CASE("identity-link GLM Hessian at half penalty equals the gram matrix")
    {
        const History h = random_history(3, 9, 2.0, false, 43);
        const RewardModel m = GlmModel{3, Link::identity};
        const LossSpec spec(m, h, 1.0);
        CHECK((hessian(spec, random_theta(3, 44)) - h.gram()).cwiseAbs().maxCoeff() < 1e-12);
    }

    TEST_CASE("subset gradients cover the full gradient")
    {
        for (RewardModel m : {RewardModel{LinearModel{3}}, RewardModel{GlmModel{3, Link::logistic}},
                              RewardModel{MlpModel({3, 4, 1}, 0.2)}}) {
            const History h = random_history(3, 8, 1.0, true, 50);
            const LossSpec spec(m, h, 0.3);
            const Vector th = random_theta(spec.parameter_count(), 51, 0.5);
            GradientEvaluator eval;
            Vector full;
            eval.gradient(spec, th, full);

            std::vector<std::size_t> all(8);
            std::iota(all.begin(), all.end(), std::size_t{0});
            Vector g;
            eval.gradient_subset(spec, th, all, g);
            CHECK((g - full).cwiseAbs().maxCoeff() < 1e-10);

            // averaging the rescaled single-row estimates recovers the full gradient
            Vector avg = Vector::Zero(th.size());
            for (std::size_t i = 0; i < 8; ++i) {
                const std::size_t row[] = {i};
                eval.gradient_subset(spec, th, row, g);
                avg += g / 8.0;
            }
            CHECK((avg - full).cwiseAbs().maxCoeff() < 1e-10);
        }
    }

    TEST_CASE("network forward matches a naive evaluation")
    {
        const MlpModel m({3, 5, 4, 1}, 0.05);
        CHECK(m.parameter_count() == 3 * 5 + 5 + 5 * 4 + 4 + 4 + 1);
        RngStream init(1, streams::model_init);
        const Vector th = m.initial_parameters(init);
        CHECK(static_cast<std::size_t>(th.size()) == m.parameter_count());
        const RewardModel rm = m;
        RngStream r(2, 99);
        std::vector<double> rows(4 * 3);
        r.fill_normal(rows);
        std::vector<double> out(4);
        predict_batch(rm, rows, 4, th, out);
        for (std::size_t i = 0; i < 4; ++i) {
            const std::vector<double> x(rows.begin() + 3 * i, rows.begin() + 3 * i + 3);
            CHECK(out[i] == doctest::Approx(naive_mlp(m, x, th)).epsilon(1e-12));
            CHECK(predict(rm, x, th) == doctest::Approx(out[i]).epsilon(1e-12));
        }
    }

    TEST_CASE("initialization is seeded and scaled")
    {
        const MlpModel m({10, 200, 1}, 0.0);
        RngStream a(3, streams::model_init);
        RngStream b(3, streams::model_init);
        const Vector t1 = m.initial_parameters(a);
        CHECK(t1 == m.initial_parameters(b));
        const auto& first = m.layers()[0];
        double ss = 0.0;
        for (std::size_t i = 0; i < first.in * first.out; ++i) {
            ss += t1[static_cast<Eigen::Index>(first.weight_offset + i)] * t1[static_cast<Eigen::Index>(first.weight_offset + i)];
        }
        // He scaling: variance 2 / fan-in
        CHECK(ss / (first.in * first.out) == doctest::Approx(0.2).epsilon(0.15));
        for (std::size_t o = 0; o < first.out; ++o) {
            CHECK(t1[static_cast<Eigen::Index>(first.bias_offset + o)] == 0.0);
        }
    }

    TEST_CASE("model validation")
    {
        CHECK_THROWS_AS(MlpModel({3}, 0.1), InvalidInput);
        CHECK_THROWS_AS(MlpModel({3, 4, 2}, 0.1), InvalidInput);
        CHECK_THROWS_AS(MlpModel({3, 4, 1}, 1.5), InvalidInput);
        const History h = random_history(3, 2, 1.0, false, 60);
        const RewardModel m = LinearModel{4};
        CHECK_THROWS_AS(LossSpec(m, h, 1.0), InvalidInput);
        const RewardModel ok = LinearModel{3};
        const LossSpec spec(ok, h, 1.0);
        CHECK_THROWS_AS(loss(spec, Vector::Zero(2)), InvalidInput);
    }

    TEST_CASE("minimize reaches the ridge solution")
    {
        const History h = random_history(5, 30, 1.0, false, 70);
        const RewardModel m = LinearModel{5};
        const LossSpec spec(m, h, 1.0);
        const auto res = minimize(spec, Vector::Zero(5), 500, 1e-9);
        CHECK(res.converged);
        CHECK((res.theta - h.ridge_solution()).cwiseAbs().maxCoeff() < 1e-8);
    }

    TEST_CASE("minimize finds a stationary point of the logistic loss")
    {
        const History h = random_history(4, 60, 1.0, true, 71);
        const RewardModel m = GlmModel{4, Link::logistic};
        const LossSpec spec(m, h, 0.5);
        const auto res = minimize(spec, Vector::Zero(4), 500, 1e-8);
        CHECK(res.converged);
        CHECK(loss_gradient(spec, res.theta).norm() < 1e-7);
        // warm start from the optimum needs no iterations
        const auto again = minimize(spec, res.theta, 50, 1e-6);
        CHECK(again.iterations == 0);
        CHECK(again.converged);
    }

    TEST_CASE("minimize reports a budget cut")
    {
        const History h = random_history(4, 60, 1.0, true, 72);
        const RewardModel m = GlmModel{4, Link::logistic};
        const LossSpec spec(m, h, 0.5);
        const auto res = minimize(spec, Vector::Constant(4, 5.0), 1, 1e-14);
        CHECK_FALSE(res.converged);
        CHECK(res.iterations == 1);
        CHECK(res.loss < loss(spec, Vector::Constant(4, 5.0)));
    }
}

TEST_SUITE("models")
{
    TEST_CASE("newton minimizer agrees with gradient descent")
    {
        const History h = random_history(4, 60, 1.0, true, 71);
        const RewardModel m = GlmModel{4, Link::logistic};
        const LossSpec spec(m, h, 0.5);
        const auto gd = minimize(spec, Vector::Zero(4), 2000, 1e-9);
        const auto nt = minimize_newton(spec, Vector::Zero(4), 50, 1e-9);
        CHECK(nt.converged);
        CHECK(nt.iterations < 15);
        CHECK((nt.theta - gd.theta).cwiseAbs().maxCoeff() < 1e-7);

        // one full step lands on the ridge solution
        const History hr = random_history(5, 30, 1.0, false, 72);
        const LossSpec ridge(RewardModel{LinearModel{5}}, hr, 1.0);
        const auto r = minimize_newton(ridge, Vector::Zero(5), 1, 0.0);
        CHECK((r.theta - hr.ridge_solution()).cwiseAbs().maxCoeff() < 1e-9);
        CHECK_THROWS_AS(minimize_newton(LossSpec(RewardModel{MlpModel({4, 3, 1}, 0.1)}, h, 1.0), Vector::Zero(19), 5, 1e-6),
                        UnsupportedOperation);
    }
}
