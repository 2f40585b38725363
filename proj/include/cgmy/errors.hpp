#ifndef CGMY_ERRORS_HPP
#define CGMY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cgmy {

// Gamma evaluated too close to a non-positive integer.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Result left the representable double range.
class OverflowError : public std::range_error {
public:
    using std::range_error::range_error;
};

// Integrand returned a non-finite value; carries the offending abscissa.
class IntegrandError : public std::runtime_error {
public:
    IntegrandError(const std::string& what, double abscissa)
        : std::runtime_error(what), abscissa_(abscissa) {}
    double abscissa() const { return abscissa_; }

private:
    double abscissa_;
};

// An adaptive integration failed the tolerance contract.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double value,
                        double error_estimate, long evaluations)
        : std::runtime_error(what),
          value_(value), error_estimate_(error_estimate), evaluations_(evaluations) {}
    double value() const { return value_; }
    double error_estimate() const { return error_estimate_; }
    long evaluations() const { return evaluations_; }

private:
    double value_;
    double error_estimate_;
    long evaluations_;
};

} // namespace cgmy

#endif
