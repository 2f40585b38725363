#ifndef CGMY_PRICER_HPP
#define CGMY_PRICER_HPP

#include <complex>
#include <vector>

#include "cgmy/model.hpp"
#include "cgmy/quadrature.hpp"

namespace cgmy {

struct PriceRequest {
    double t; // time to maturity, years; t > 0
    double k; // log-moneyness, k = log(S0/K)

    PriceRequest(double t_, double k_);
};

/// f(x) = 1 - e^x + x without cancellation for small |x|.
std::complex<double> f_stable(std::complex<double> x);
double f_stable_real(double x);

/// Re f(x + iy), the real part taken analytically.
double re_f_stable(double x, double y);

/// Default breakpoints for the Laplace-type integrands: decades up to
/// w* = (sigma_Y t)^(-1/Y), the concentration scale, then w* and 10 w*.
std::vector<double> default_breakpoints(double t, const CgmyParams& p,
                                        const DerivedParams& d);

/// Normalized ATM call price via the Lipton-Lewis half-line integral.
QuadratureResult price_atm(double t, const CgmyParams& p,
                           const DerivedParams& d,
                           const QuadratureConfig& cfg = {});

/// Normalized call price at log-moneyness k, clamped at the normalized
/// intrinsic value (1 - e^{-k})+.
QuadratureResult price(double t, double k, const CgmyParams& p,
                       const DerivedParams& d,
                       const QuadratureConfig& cfg = {});

/// Remainder after the first two orders,
/// R3(t) = price_atm(t) - d1 t^{1/Y} - d2 t, as a combined integrand.
QuadratureResult remainder_r3(double t, const CgmyParams& p,
                              const DerivedParams& d,
                              const QuadratureConfig& cfg = {});

/// R4(t) = R3(t) - a21 t^{2 - 1/Y}.
QuadratureResult remainder_r4(double t, const CgmyParams& p,
                              const DerivedParams& d,
                              const QuadratureConfig& cfg = {});

/// R5(t) = R4(t) - a41 t^{4 - 3/Y}.
QuadratureResult remainder_r5(double t, const CgmyParams& p,
                              const DerivedParams& d,
                              const QuadratureConfig& cfg = {});

/// L21(t) = (b~^2 t^2 / 2 pi) int_0^inf w^2 e^{-sigma_Y t w^Y} / (w^2 + 1/4) dw.
QuadratureResult laplace_check_a21(double t, const CgmyParams& p,
                                   const DerivedParams& d,
                                   const QuadratureConfig& cfg = {});

/// L12(t) = (Re beta1 / pi) t int_0^inf w^{Y-1}(1 - e^{-sigma_Y t w^Y}) / (w^2 + 1/4) dw.
QuadratureResult laplace_check_a12(double t, const CgmyParams& p,
                                   const DerivedParams& d,
                                   const QuadratureConfig& cfg = {});

} // namespace cgmy

#endif
