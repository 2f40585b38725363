#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "cgmy/errors.hpp"
#include "cgmy/quadrature.hpp"

using cgmy::integrate;
using cgmy::laplace_exp_integral;
using cgmy::laplace_frac_integral;
using cgmy::QuadratureConfig;
using cgmy::QuadratureResult;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}
} // namespace

TEST_CASE("integrate: exponential and Cauchy-type tails") {
    const auto a = integrate([](double x) { return std::exp(-x); }, 0.0, kInf);
    CHECK(a.converged);
    CHECK(rel_err(a.value, 1.0) < 1e-12);
    CHECK(a.evaluations > 0);
    CHECK(a.error_estimate <= std::max(1e-12 * a.value, 1e-15));

    // int_0^inf du/(u^2 + 1/4) = pi
    const auto b = integrate([](double u) { return 1.0 / (u * u + 0.25); },
                             0.0, kInf);
    CHECK(b.converged);
    CHECK(rel_err(b.value, std::numbers::pi) < 1e-12);
}

TEST_CASE("integrate: stretched-exponential Laplace integrand") {
    // int_0^inf e^{-0.01 w^1.5} dw = 0.01^{-2/3} Gamma(2/3) / 1.5
    QuadratureConfig cfg;
    const double wstar = std::pow(0.01, -1.0 / 1.5);
    cfg.breakpoints = {1.0, wstar, 10.0 * wstar};
    const auto r = integrate(
        [](double w) { return std::exp(-0.01 * std::pow(w, 1.5)); }, 0.0, kInf,
        cfg);
    CHECK(r.converged);
    CHECK(rel_err(r.value, 19.449057753964867) < 1e-12);
}

TEST_CASE("integrate: tail mapping is exact for x^-2") {
    const auto r = integrate([](double x) { return 1.0 / (x * x); }, 1.0, kInf);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 1.0) < 1e-13);
}

TEST_CASE("integrate: additivity across a split point") {
    auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-0.2 * x); };
    const auto whole = integrate(f, 0.0, 2.0);
    const auto left = integrate(f, 0.0, 0.7);
    const auto right = integrate(f, 0.7, 2.0);
    CHECK(whole.converged);
    CHECK(std::abs(whole.value - (left.value + right.value)) <=
          whole.error_estimate + left.error_estimate + right.error_estimate +
              1e-15);
}

TEST_CASE("integrate: breakpoints outside the interval are ignored") {
    QuadratureConfig cfg;
    cfg.breakpoints = {0.25, 5.0};
    const auto r = integrate([](double x) { return x; }, 0.5, 1.0, cfg);
    CHECK(r.converged);
    CHECK(rel_err(r.value, 0.375) < 1e-13);
}

TEST_CASE("integrate: non-finite integrand reports the abscissa") {
    bool caught = false;
    try {
        integrate([](double x) { return x > 2.0 ? std::nan("") : 1.0; }, 0.0,
                  kInf);
    } catch (const cgmy::IntegrandError& e) {
        caught = true;
        CHECK(e.abscissa() > 2.0);
    }
    CHECK(caught);
}

TEST_CASE("integrate: exhausted subdivision budget is reported, not hidden") {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 3;
    const auto r = integrate([](double x) { return std::pow(x, -0.9); }, 0.0,
                             1.0, cfg);
    CHECK_FALSE(r.converged);
    CHECK(std::isfinite(r.value));
    CHECK(r.error_estimate > 0.0);
}

TEST_CASE("integrate: config validation") {
    QuadratureConfig bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, bad),
                    std::invalid_argument);
    QuadratureConfig bad2;
    bad2.breakpoints = {2.0, 1.0};
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 3.0, bad2),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 1.0, {}),
                    std::invalid_argument);
}

TEST_CASE("integrate: deterministic re-runs") {
    auto f = [](double x) { return std::exp(-x * x) * std::cos(5.0 * x); };
    const auto a = integrate(f, 0.0, kInf);
    const auto b = integrate(f, 0.0, kInf);
    CHECK(a.value == b.value);
    CHECK(a.error_estimate == b.error_estimate);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("laplace_exp_integral: substitution identity and domain") {
    for (double y : {1.2, 1.5, 1.8}) {
        CHECK(rel_err(laplace_exp_integral(1.0, y, y - 1.0), 1.0 / y) < 1e-14);
    }
    CHECK_THROWS_AS(laplace_exp_integral(0.0, 1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(laplace_exp_integral(1.0, 1.5, -1.0), std::invalid_argument);
}

TEST_CASE("laplace_frac_integral: closed form value and domain") {
    // (lambda=1, Y=2, alpha=-1/2) -> -Gamma(-1/2)/2 = sqrt(pi)
    CHECK(rel_err(laplace_frac_integral(1.0, 2.0, -0.5),
                  std::sqrt(std::numbers::pi)) < 1e-13);
    CHECK(laplace_frac_integral(0.5, 1.3, -0.4) > 0.0);
    CHECK_THROWS_AS(laplace_frac_integral(1.0, 1.5, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(laplace_frac_integral(1.0, 1.5, 0.0), std::invalid_argument);
}

TEST_CASE("laplace closed forms agree with direct quadrature") {
    // subset of the acceptance grid; the full sweep runs in the acceptance
    // suite
    for (double lam : {1e-2, 1.0}) {
        for (double y : {1.3, 1.7}) {
            QuadratureConfig cfg;
            const double wstar = std::pow(lam, -1.0 / y);
            cfg.breakpoints = {wstar, 10.0 * wstar};
            if (wstar > 1.0) cfg.breakpoints.insert(cfg.breakpoints.begin(), 1.0);

            for (double p : {0.0, 2.0}) {
                const double closed = laplace_exp_integral(lam, y, p);
                const auto q = integrate(
                    [&](double w) {
                        return std::pow(w, p) * std::exp(-lam * std::pow(w, y));
                    },
                    0.0, kInf, cfg);
                CHECK(q.converged);
                CHECK(rel_err(q.value, closed) < 1e-10);
            }

            const double alpha = 1.0 - 2.0 / y;
            const double closed = laplace_frac_integral(lam, y, alpha);
            const auto q = integrate(
                [&](double u) {
                    return -std::expm1(-lam * std::pow(u, y)) *
                           std::pow(u, alpha * y - 1.0);
                },
                0.0, kInf, cfg);
            CHECK(q.converged);
            CHECK(rel_err(q.value, closed) < 1e-10);
        }
    }
    // example from the identity with moment p = 2
    QuadratureConfig cfg;
    cfg.breakpoints = {1.0, std::pow(0.5, -1.0 / 1.3), 10.0 * std::pow(0.5, -1.0 / 1.3)};
    const auto q = integrate(
        [](double w) { return w * w * std::exp(-0.5 * std::pow(w, 1.3)); }, 0.0,
        kInf, cfg);
    CHECK(rel_err(q.value, laplace_exp_integral(0.5, 1.3, 2.0)) < 1e-12);

    const auto q2 = integrate(
        [](double u) {
            return -std::expm1(-0.2 * std::pow(u, 1.6)) *
                   std::pow(u, -0.25 * 1.6 - 1.0);
        },
        0.0, kInf, cfg);
    CHECK(rel_err(q2.value, laplace_frac_integral(0.2, 1.6, -0.25)) < 1e-12);
    CHECK(rel_err(laplace_frac_integral(0.2, 1.6, -0.25), 2.0487138483244108) <
          1e-13);
}
