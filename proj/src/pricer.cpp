#include "cgmy/pricer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cgmy/expansion.hpp"

namespace cgmy {

namespace {

constexpr double kPi = std::numbers::pi;

// Taylor radius for f(x) = 1 - e^x + x.  At |x| = 1e-3 the series through
// x^6/720 is exact to ~4e-19 relative, while the expm1 route still loses
// ~2e-13; below the radius the expm1 route would drift past the 1e-12
// contract, so the switch sits at 1e-3 rather than closer to zero.
constexpr double kTaylorRadius = 1e-3;

double one_minus_cos(double y) {
    const double s = std::sin(0.5 * y);
    return 2.0 * s * s;
}

} // namespace

double f_stable_real(double x) {
    if (std::abs(x) <= kTaylorRadius) {
        // -x^2/2 (1 + x/3 + x^2/12 + x^3/60 + x^4/360)
        return -0.5 * x * x *
               (1.0 + x / 3.0 + x * x / 12.0 + x * x * x / 60.0 +
                x * x * x * x / 360.0);
    }
    return -(std::expm1(x) - x);
}

std::complex<double> f_stable(std::complex<double> x) {
    if (std::abs(x) <= kTaylorRadius) {
        const std::complex<double> x2 = x * x;
        return -0.5 * x2 *
               (1.0 + x / 3.0 + x2 / 12.0 + x2 * x / 60.0 + x2 * x2 / 360.0);
    }
    // complex expm1: e^{a+ib} - 1 = expm1(a) cos b - (1 - cos b) + i e^a sin b
    const double a = x.real();
    const double b = x.imag();
    const std::complex<double> em1{std::expm1(a) * std::cos(b) - one_minus_cos(b),
                                   std::exp(a) * std::sin(b)};
    return -(em1 - x);
}

double re_f_stable(double x, double y) {
    // Re f(x + iy) = f(x) + e^x (1 - cos y)
    return f_stable_real(x) + std::exp(x) * one_minus_cos(y);
}

PriceRequest::PriceRequest(double t_, double k_) : t(t_), k(k_) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("t must be positive");
    }
    if (!std::isfinite(k)) {
        throw std::invalid_argument("k must be finite");
    }
}

std::vector<double> default_breakpoints(double t, const CgmyParams& p,
                                      const DerivedParams& d) {
    return laplace_breakpoints(d.sigma_y * t, p.y);
}

namespace {

QuadratureConfig with_default_breakpoints(const QuadratureConfig& cfg, double t,
                                        const CgmyParams& p,
                                        const DerivedParams& d) {
    QuadratureConfig out = cfg;
    if (out.breakpoints.empty()) {
        out.breakpoints = default_breakpoints(t, p, d);
    }
    return out;
}

void require_positive_t(double t) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("t must be positive");
    }
}

// Tail-mapped panels probe w far beyond the Laplace knee.  Once the stable
// exponential has underflowed (lam w^Y > ~700) the integrands reduce to
// their algebraic tails; evaluating psi0 there would overflow first.
constexpr double kExpUnderflow = -700.0;

} // namespace

QuadratureResult price_atm(double t, const CgmyParams& p,
                           const DerivedParams& d,
                           const QuadratureConfig& cfg) {
    require_positive_t(t);
    const QuadratureConfig local = with_default_breakpoints(cfg, t, p, d);
    const double lam = d.sigma_y * t;
    auto integrand = [&](double u) {
        if (-lam * std::pow(u, p.y) < kExpUnderflow) {
            return 1.0 / (u * u + 0.25); // e^{t psi0} has underflowed
        }
        const double x = t * re_psi_shifted(u, p, d);
        const double y = t * im_psi_shifted(u, p, d);
        // 1 - e^x cos y, both pieces non-negative for x <= 0
        return (-std::expm1(x) + std::exp(x) * one_minus_cos(y)) /
               (u * u + 0.25);
    };
    QuadratureResult r = integrate(integrand, 0.0,
                                   std::numeric_limits<double>::infinity(), local);
    r.value /= kPi;
    r.error_estimate /= kPi;
    return r;
}

QuadratureResult price(double t, double k, const CgmyParams& p,
                       const DerivedParams& d, const QuadratureConfig& cfg) {
    require_positive_t(t);
    QuadratureConfig local = with_default_breakpoints(cfg, t, p, d);
    const double lam = d.sigma_y * t;
    // cos(k u) oscillates fast for large |k|; seed the panel list with
    // quarter-period splits out to where the stable envelope has died
    if (std::abs(k) > 1.0 && cfg.breakpoints.empty()) {
        const double u_cut = std::pow(45.0 / lam, 1.0 / p.y);
        const double spacing =
            std::max(std::numbers::pi / (2.0 * std::abs(k)), u_cut / 8000.0);
        std::vector<double> bps = local.breakpoints;
        for (double u = spacing; u < u_cut; u += spacing) {
            bps.push_back(u);
        }
        std::sort(bps.begin(), bps.end());
        bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
        local.breakpoints = std::move(bps);
    }
    auto integrand = [&](double u) {
        if (-lam * std::pow(u, p.y) < kExpUnderflow) {
            return 0.0;
        }
        const double x = t * re_psi_shifted(u, p, d);
        const double y = t * im_psi_shifted(u, p, d);
        return std::exp(x) * std::cos(y + k * u) / (u * u + 0.25);
    };
    QuadratureResult r = integrate(integrand, 0.0,
                                   std::numeric_limits<double>::infinity(), local);
    const double scale = std::exp(-0.5 * k) / kPi;
    const double intrinsic = std::max(0.0, -std::expm1(-k));
    r.value = std::max(1.0 - scale * r.value, intrinsic);
    r.error_estimate *= scale;
    return r;
}

QuadratureResult remainder_r3(double t, const CgmyParams& p,
                              const DerivedParams& d,
                              const QuadratureConfig& cfg) {
    require_positive_t(t);
    const QuadratureConfig local = with_default_breakpoints(cfg, t, p, d);
    const double lam = d.sigma_y * t;
    auto integrand = [&](double w) {
        const double x = -lam * std::pow(w, p.y); // t theta0(w)
        if (x < kExpUnderflow) {
            // both exponentials have underflowed; the combined integrand is
            // t Re delta / (w^2 + 1/4) - (1 + t theta0) / (4 w^2 (w^2 + 1/4))
            const double w2 = w * w; // may overflow, the limits below hold
            return t * re_delta_asymptotic(w, p, d) / (w2 + 0.25) -
                   0.25 / (w2 * (w2 + 0.25)) +
                   0.25 * lam * std::pow(w, p.y - 4.0) / (1.0 + 0.25 / w2);
        }
        const double re1 = re_f_stable(t * re_psi_shifted(w, p, d),
                                       t * im_psi_shifted(w, p, d));
        const double term1 = re1 / (w * w + 0.25);
        // f(t theta0(w)) / w^2 with the w -> 0 limit built in
        double term2;
        if (std::abs(x) <= 1e-3) {
            term2 = -0.5 * lam * lam * std::pow(w, 2.0 * p.y - 2.0) *
                    (1.0 + x / 3.0 + x * x / 12.0 + x * x * x / 60.0 +
                     x * x * x * x / 360.0);
        } else {
            term2 = f_stable_real(x) / (w * w);
        }
        return term1 - term2;
    };
    QuadratureResult r = integrate(integrand, 0.0,
                                   std::numeric_limits<double>::infinity(), local);
    r.value /= kPi;
    r.error_estimate /= kPi;
    return r;
}

QuadratureResult remainder_r4(double t, const CgmyParams& p,
                              const DerivedParams& d,
                              const QuadratureConfig& cfg) {
    QuadratureResult r = remainder_r3(t, p, d, cfg);
    r.value -= a21(p, d) * std::pow(t, 2.0 - 1.0 / p.y);
    return r;
}

QuadratureResult remainder_r5(double t, const CgmyParams& p,
                              const DerivedParams& d,
                              const QuadratureConfig& cfg) {
    QuadratureResult r = remainder_r4(t, p, d, cfg);
    r.value -= a41(p, d) * std::pow(t, 4.0 - 3.0 / p.y);
    return r;
}

QuadratureResult laplace_check_a21(double t, const CgmyParams& p,
                                   const DerivedParams& d,
                                   const QuadratureConfig& cfg) {
    require_positive_t(t);
    const QuadratureConfig local = with_default_breakpoints(cfg, t, p, d);
    const double lam = d.sigma_y * t;
    auto integrand = [&](double w) {
        const double x = -lam * std::pow(w, p.y);
        if (x < kExpUnderflow) return 0.0;
        return w * w * std::exp(x) / (w * w + 0.25);
    };
    QuadratureResult r = integrate(integrand, 0.0,
                                   std::numeric_limits<double>::infinity(), local);
    const double scale = d.tilde_b * d.tilde_b * t * t / (2.0 * kPi);
    r.value *= scale;
    r.error_estimate *= std::abs(scale);
    return r;
}

QuadratureResult laplace_check_a12(double t, const CgmyParams& p,
                                   const DerivedParams& d,
                                   const QuadratureConfig& cfg) {
    require_positive_t(t);
    const QuadratureConfig local = with_default_breakpoints(cfg, t, p, d);
    const double lam = d.sigma_y * t;
    auto integrand = [&](double w) {
        const double x = -lam * std::pow(w, p.y);
        if (x < kExpUnderflow) {
            // 1 - e^x is exactly 1; w^{Y-3} form avoids overflow in w^2
            return std::pow(w, p.y - 3.0) / (1.0 + 0.25 / (w * w));
        }
        return std::pow(w, p.y - 1.0) * (-std::expm1(x)) / (w * w + 0.25);
    };
    QuadratureResult r = integrate(integrand, 0.0,
                                   std::numeric_limits<double>::infinity(), local);
    const double scale = d.beta1.real() * t / kPi;
    r.value *= scale;
    r.error_estimate *= std::abs(scale);
    return r;
}

} // namespace cgmy
