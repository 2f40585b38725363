#include "cgmy/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cgmy/errors.hpp"

namespace cgmy {

namespace {

// Lanczos coefficients, g = 607/128, 15 terms (Godfrey).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

// Valid for x >= 0.5.
double lanczos_gamma(double x) {
    double acc = kLanczos[0];
    for (int i = 1; i < 15; ++i) {
        acc += kLanczos[i] / (x - 1.0 + static_cast<double>(i));
    }
    const double t = x - 0.5 + kLanczosG;
    // Gamma(x) = sqrt(2 pi) t^(x - 1/2) e^(-t) acc
    return std::sqrt(2.0 * std::numbers::pi) *
           std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

constexpr double kPoleGuard = 1e-9;

} // namespace

double sin_pi(double x) {
    // sin(pi x) is 2-periodic and odd around integers; reduce to |r| <= 1/2
    double r = std::remainder(x, 2.0); // r in [-1, 1]
    if (r > 0.5) {
        r = 1.0 - r;
    } else if (r < -0.5) {
        r = -1.0 - r;
    }
    return std::sin(std::numbers::pi * r);
}

double gamma_fn(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("gamma_fn: argument must be finite");
    }
    if (x >= 0.5) {
        const double g = lanczos_gamma(x);
        if (!std::isfinite(g)) {
            throw OverflowError("gamma_fn: overflow at x = " + std::to_string(x));
        }
        return g;
    }
    if (x <= 0.0) {
        const double nearest = std::round(x);
        if (std::abs(x - nearest) < kPoleGuard) {
            throw PoleError("gamma_fn: pole at non-positive integer, x = " +
                            std::to_string(x));
        }
    }
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)), 1 - x >= 0.5 here
    const double s = sin_pi(x);
    const double g = std::numbers::pi / (s * lanczos_gamma(1.0 - x));
    if (!std::isfinite(g)) {
        throw OverflowError("gamma_fn: overflow at x = " + std::to_string(x));
    }
    return g;
}

std::complex<double> complex_pow(std::complex<double> base, double exponent) {
    if (base.real() == 0.0 && base.imag() == 0.0) {
        if (exponent > 0.0) {
            return {0.0, 0.0};
        }
        throw std::domain_error(
            "complex_pow: zero base requires a positive exponent");
    }
    if (base.imag() == 0.0 && base.real() > 0.0) {
        return {std::pow(base.real(), exponent), 0.0};
    }
    const double mag = std::exp(exponent * std::log(std::abs(base)));
    const double ang = exponent * std::arg(base);
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

} // namespace cgmy
