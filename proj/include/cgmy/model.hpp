#ifndef CGMY_MODEL_HPP
#define CGMY_MODEL_HPP

#include <complex>

namespace cgmy {

/// CGMY model parameters restricted to the infinite-variation regime with a
/// finite exponential moment: C > 0, G >= 0, M > 1, Y in (1, 2).
struct CgmyParams {
    double c;
    double g;
    double m;
    double y;

    CgmyParams(double c_, double g_, double m_, double y_);
};

/// Constants derived once per parameter set and shared by every formula.
struct DerivedParams {
    double c_gamma;  // C * Gamma(-Y), positive for Y in (1, 2)
    double tilde_b;  // martingale drift
    double kappa;    // tilde_b/2 - C Gamma(-Y)(M^Y + G^Y)
    double sigma_y;  // 2 C Gamma(-Y) |cos(pi Y / 2)|
    double m_shift;  // M - 1/2
    double g_shift;  // G + 1/2
    std::complex<double> beta1; // first binomial constant
    std::complex<double> beta2; // second binomial constant (n = 2 term)
};

DerivedParams derive(const CgmyParams& p);

/// Characteristic exponent on the analytic strip -1 <= Im(u) <= 0.
std::complex<double> psi(std::complex<double> u, const CgmyParams& p,
                         const DerivedParams& d);

/// Contour-shifted exponent psi0(v) = psi(v - i/2), v real.
std::complex<double> psi_shifted(double v, const CgmyParams& p,
                                 const DerivedParams& d);

/// Re psi0(v) through the arctan/power form, no complex arithmetic.
double re_psi_shifted(double v, const CgmyParams& p, const DerivedParams& d);

/// Im psi0(v) through the same polar decomposition.
double im_psi_shifted(double v, const CgmyParams& p, const DerivedParams& d);

/// Rescaled exponent theta(t, v); satisfies theta(t, t^(1/Y) v) = t psi0(v).
std::complex<double> theta(double t, double v, const CgmyParams& p,
                           const DerivedParams& d);

/// Limiting stable exponent theta0(u) = -sigma_Y |u|^Y.
double theta0(double u, const CgmyParams& p, const DerivedParams& d);

/// Tempering correction delta(w) = psi0(w) - theta0(w), w > 0.
std::complex<double> delta(double w, const CgmyParams& p,
                           const DerivedParams& d);

/// Large-w binomial tail of Re delta(w): kappa plus the n = 1..4 tempering
/// corrections.  Direct evaluation of Re psi0 - theta0 cancels
/// catastrophically at large w; the deep-tail integrand branches use this
/// form instead.
double re_delta_asymptotic(double w, const CgmyParams& p,
                           const DerivedParams& d);

} // namespace cgmy

#endif
