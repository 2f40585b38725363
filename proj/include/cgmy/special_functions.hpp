#ifndef CGMY_SPECIAL_FUNCTIONS_HPP
#define CGMY_SPECIAL_FUNCTIONS_HPP

#include <complex>

namespace cgmy {

/// Euler gamma function on the real line, poles excluded.
///
/// Positive axis uses a 15-term Lanczos kernel; x < 0.5 goes through the
/// reflection formula against that kernel.  Relative error is below 1e-13
/// for |x| <= 30 away from the pole guard.
///
/// Throws PoleError when x is within 1e-9 of a non-positive integer and
/// OverflowError when the result is not representable.
double gamma_fn(double x);

/// Principal-branch complex power z^p with real exponent p.
///
/// Defined as exp(p (ln|z| + i Arg z)) with Arg in (-pi, pi].  A positive
/// real base yields an exactly real result.  Throws std::domain_error for
/// zero base with non-positive exponent.
std::complex<double> complex_pow(std::complex<double> base, double exponent);

/// sin(pi x) with range reduction on the integer part.
double sin_pi(double x);

} // namespace cgmy

#endif
