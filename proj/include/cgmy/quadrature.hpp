#ifndef CGMY_QUADRATURE_HPP
#define CGMY_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace cgmy {

struct QuadratureConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-15;
    int max_subdivisions = 2000;
    // Domain split hints, strictly increasing.  When the upper limit is
    // infinite the tail beyond the last breakpoint is mapped to (0, 1]
    // through w = B/s.
    std::vector<double> breakpoints{};

    void validate() const; // throws std::invalid_argument
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (7-15) integration of f over [lower, upper],
/// upper may be +infinity.  Panels are bisected worst-error-first with a
/// deterministic tie-break, so repeated runs are bit-identical.
///
/// Throws IntegrandError when f returns a non-finite value.  Non-converged
/// results are returned with converged = false, never silently.
QuadratureResult integrate(const std::function<double(double)>& f,
                           double lower, double upper,
                           const QuadratureConfig& cfg = {});

/// Closed form of the Laplace integral  int_0^inf w^p exp(-lambda w^Y) dw
///   = lambda^(-(p+1)/Y) Gamma((p+1)/Y) / Y,   lambda > 0, p >= 0.
double laplace_exp_integral(double lambda, double y, double p);

/// Closed form of  int_0^inf (1 - exp(-lambda u^Y)) u^(alpha Y - 1) du
///   = -lambda^(-alpha) Gamma(alpha) / Y,   alpha in (-1, 0).
/// The result is positive since Gamma is negative on (-1, 0).
double laplace_frac_integral(double lambda, double y, double alpha);

/// Breakpoint ladder for integrands keyed to exp(-lambda w^Y): decades from
/// 1 up to the concentration scale w* = lambda^(-1/Y), then w* and 10 w*.
/// A single panel across several decades produces deceptive embedded-rule
/// error estimates; the ladder keeps every initial panel within one decade.
std::vector<double> laplace_breakpoints(double lambda, double y);

} // namespace cgmy

#endif
