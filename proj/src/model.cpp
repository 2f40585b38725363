#include "cgmy/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cgmy/special_functions.hpp"

namespace cgmy {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
} // namespace

CgmyParams::CgmyParams(double c_, double g_, double m_, double y_)
    : c(c_), g(g_), m(m_), y(y_) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("CgmyParams: C must be positive");
    }
    if (!(g >= 0.0) || !std::isfinite(g)) {
        throw std::invalid_argument("CgmyParams: G must be non-negative");
    }
    if (!(m > 1.0) || !std::isfinite(m)) {
        throw std::invalid_argument("CgmyParams: M must exceed 1");
    }
    if (!(y > 1.0 && y < 2.0)) {
        throw std::invalid_argument("CgmyParams: Y must lie in (1, 2)");
    }
}

DerivedParams derive(const CgmyParams& p) {
    DerivedParams d{};
    d.c_gamma = p.c * gamma_fn(-p.y);

    const double pm1 = std::pow(p.m - 1.0, p.y);
    const double pg1 = std::pow(p.g + 1.0, p.y);
    const double pm = std::pow(p.m, p.y);
    const double pg = std::pow(p.g, p.y);
    // grouped so tilde_b is exactly zero when G = M - 1
    d.tilde_b = -d.c_gamma * ((pm1 - pg) + (pg1 - pm));
    d.kappa = 0.5 * d.tilde_b - d.c_gamma * (pm + pg);
    // |cos(pi Y/2)| = sin(pi (Y-1)/2) on (1, 2); the shifted form keeps
    // relative accuracy as Y -> 1
    d.sigma_y = 2.0 * d.c_gamma * std::sin(std::numbers::pi * (p.y - 1.0) / 2.0);
    d.m_shift = p.m - 0.5;
    d.g_shift = p.g + 0.5;

    const double ang = (p.y - 1.0) * std::numbers::pi / 2.0;
    d.beta1 = d.c_gamma * p.y *
              std::complex<double>{(d.m_shift + d.g_shift) * std::cos(ang),
                                   (d.g_shift - d.m_shift) * std::sin(ang)};
    // n = 2 binomial term: -C Gamma(-Y) Y(Y-1)/2 (Mt^2 e^{-i pi Y/2} + Gt^2 e^{i pi Y/2})
    const double half_ang = std::numbers::pi * p.y / 2.0;
    const double m2 = d.m_shift * d.m_shift;
    const double g2 = d.g_shift * d.g_shift;
    d.beta2 = -d.c_gamma * p.y * (p.y - 1.0) / 2.0 *
              std::complex<double>{(m2 + g2) * std::cos(half_ang),
                                   (g2 - m2) * std::sin(half_ang)};
    return d;
}

std::complex<double> psi(std::complex<double> u, const CgmyParams& p,
                         const DerivedParams& d) {
    if (u.imag() < -1.0 || u.imag() > 0.0) {
        throw std::domain_error("psi: u outside the strip -1 <= Im(u) <= 0");
    }
    const std::complex<double> iu = kI * u;
    const double pm = std::pow(p.m, p.y);
    const double pg = std::pow(p.g, p.y);
    // grouped per power so psi(0) is exactly zero
    return kI * u * d.tilde_b +
           d.c_gamma * ((complex_pow(p.m - iu, p.y) - pm) +
                        (complex_pow(p.g + iu, p.y) - pg));
}

std::complex<double> psi_shifted(double v, const CgmyParams& p,
                                 const DerivedParams& d) {
    const std::complex<double> iv = kI * v;
    return kI * v * d.tilde_b + d.kappa +
           d.c_gamma * (complex_pow(d.m_shift - iv, p.y) +
                        complex_pow(d.g_shift + iv, p.y));
}

double re_psi_shifted(double v, const CgmyParams& p, const DerivedParams& d) {
    const double rm = std::pow(d.m_shift * d.m_shift + v * v, 0.5 * p.y);
    const double rg = std::pow(d.g_shift * d.g_shift + v * v, 0.5 * p.y);
    const double am = std::atan(-v / d.m_shift);
    const double ag = std::atan(v / d.g_shift);
    return d.kappa +
           d.c_gamma * (rm * std::cos(p.y * am) + rg * std::cos(p.y * ag));
}

double im_psi_shifted(double v, const CgmyParams& p, const DerivedParams& d) {
    const double rm = std::pow(d.m_shift * d.m_shift + v * v, 0.5 * p.y);
    const double rg = std::pow(d.g_shift * d.g_shift + v * v, 0.5 * p.y);
    const double am = std::atan(-v / d.m_shift);
    const double ag = std::atan(v / d.g_shift);
    return v * d.tilde_b +
           d.c_gamma * (rm * std::sin(p.y * am) + rg * std::sin(p.y * ag));
}

std::complex<double> theta(double t, double v, const CgmyParams& p,
                           const DerivedParams& d) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("theta: t must be positive");
    }
    const double root = std::pow(t, 1.0 / p.y);
    const std::complex<double> iv = kI * v;
    return kI * v * d.tilde_b * std::pow(t, 1.0 - 1.0 / p.y) + d.kappa * t +
           d.c_gamma * (complex_pow(d.m_shift * root - iv, p.y) +
                        complex_pow(d.g_shift * root + iv, p.y));
}

double theta0(double u, const CgmyParams& p, const DerivedParams& d) {
    if (u == 0.0) return 0.0;
    return -d.sigma_y * std::pow(std::abs(u), p.y);
}

std::complex<double> delta(double w, const CgmyParams& p,
                           const DerivedParams& d) {
    if (!(w > 0.0)) {
        throw std::invalid_argument("delta: w must be positive");
    }
    return psi_shifted(w, p, d) - theta0(w, p, d);
}

double re_delta_asymptotic(double w, const CgmyParams& p,
                           const DerivedParams& d) {
    // Re beta_n = C Gamma(-Y) binom(Y, n) (Mt^n + Gt^n) cos(pi (Y - n) / 2)
    double acc = d.kappa;
    double binom = 1.0;
    double mpow = 1.0;
    double gpow = 1.0;
    for (int n = 1; n <= 4; ++n) {
        binom *= (p.y - (n - 1)) / n;
        mpow *= d.m_shift;
        gpow *= d.g_shift;
        acc += d.c_gamma * binom * (mpow + gpow) *
               std::cos(std::numbers::pi * (p.y - n) / 2.0) *
               std::pow(w, p.y - n);
    }
    return acc;
}

} // namespace cgmy
