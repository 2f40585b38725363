#include "cgmy/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cgmy/special_functions.hpp"

namespace cgmy {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTieTol = 1e-12;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}
} // namespace

std::string mechanism_name(Mechanism m, int drift_order) {
    switch (m) {
        case Mechanism::StableFirstOrder: return "stable_first_order";
        case Mechanism::SecondOrder: return "second_order";
        case Mechanism::Drift: return "drift(" + std::to_string(drift_order) + ")";
        case Mechanism::BinomialFirst: return "binomial_first";
        case Mechanism::CandidateKappaCross: return "candidate_kappa_cross";
        case Mechanism::CandidateSecondBinomial: return "candidate_second_binomial";
    }
    return "unknown";
}

double d1(const CgmyParams& p, const DerivedParams& d) {
    return gamma_fn(1.0 - 1.0 / p.y) * std::pow(d.sigma_y, 1.0 / p.y) / kPi;
}

QuadratureResult d2_integral(const CgmyParams& p, const DerivedParams& d,
                             const QuadratureConfig& cfg) {
    QuadratureConfig local = cfg;
    if (local.breakpoints.empty()) {
        local.breakpoints = {1.0, 10.0 * std::max(d.m_shift, d.g_shift)};
    }
    auto integrand = [&](double w) {
        if (w > 1e6) {
            // theta0/w^2 - Re psi0/(w^2+1/4) recombines exactly into
            // -(sigma_Y w^{Y-2}/4 + Re delta(w)) / (w^2 + 1/4); the binomial
            // form of Re delta avoids the large-w cancellation
            return -(0.25 * d.sigma_y * std::pow(w, p.y - 2.0) +
                     re_delta_asymptotic(w, p, d)) /
                   (w * w + 0.25);
        }
        // partial fractions: theta0/w^2 - Re psi0/(w^2 + 1/4)
        return -d.sigma_y * std::pow(w, p.y - 2.0) -
               re_psi_shifted(w, p, d) / (w * w + 0.25);
    };
    QuadratureResult r = integrate(integrand, 0.0,
                                   std::numeric_limits<double>::infinity(), local);
    r.value /= kPi;
    r.error_estimate /= kPi;
    return r;
}

double d2_closed_fl(const CgmyParams& p, const DerivedParams& d) {
    return 0.5 * d.c_gamma *
           (std::pow(p.m - 1.0, p.y) - std::pow(p.m, p.y) -
            std::pow(p.g + 1.0, p.y) + std::pow(p.g, p.y));
}

double a_drift(int k, const CgmyParams& p, const DerivedParams& d) {
    if (k < 1) {
        throw std::invalid_argument("a_drift: k must be a positive integer");
    }
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const double ex = (2.0 * k - 1.0) / p.y;
    // shaped as b~^{2k} * [stable density analogue] / (2k)! so that
    // a_drift(1) == b~^2 p_Z(1,0)/2 holds bit-exactly
    const double dens = std::pow(d.sigma_y, -ex) * gamma_fn(ex) / (kPi * p.y);
    return sign * std::pow(d.tilde_b * d.tilde_b, k) * dens / factorial(2 * k);
}

double a21(const CgmyParams& p, const DerivedParams& d) {
    return a_drift(1, p, d);
}

double a41(const CgmyParams& p, const DerivedParams& d) {
    return a_drift(2, p, d);
}

double a12(const CgmyParams& p, const DerivedParams& d) {
    return -d.beta1.real() / (kPi * p.y) *
           std::pow(d.sigma_y, (2.0 - p.y) / p.y) * gamma_fn(1.0 - 2.0 / p.y);
}

double stable_density_at_zero(const CgmyParams& p, const DerivedParams& d) {
    const double ex = 1.0 / p.y;
    return std::pow(d.sigma_y, -ex) * gamma_fn(ex) / (kPi * p.y);
}

int k_cap(double y) {
    if (!(y > 1.0 && y < 2.0)) {
        throw std::invalid_argument("k_cap: Y must lie in (1, 2)");
    }
    // +1e-9 so a decimal Y whose 1/(2(Y-1)) is an integer up to rounding
    // (e.g. Y = 1.1) still lands on that integer
    const int k = static_cast<int>(std::floor(1.0 / (2.0 * (y - 1.0)) + 1e-9));
    return std::max(k, 2);
}

std::vector<ExpansionTerm> higher_candidates(const CgmyParams& p,
                                             const DerivedParams& d) {
    std::vector<ExpansionTerm> out;
    const double gy1 = gamma_fn((p.y - 1.0) / p.y);
    ExpansionTerm cross;
    cross.exponent = 1.0 + 1.0 / p.y;
    cross.coefficient =
        d.kappa * std::pow(d.sigma_y, 1.0 / p.y) * gy1 / kPi +
        d.tilde_b * d.beta1.imag() / (kPi * p.y) *
            std::pow(d.sigma_y, -(p.y - 1.0) / p.y) * gy1;
    cross.mechanism = Mechanism::CandidateKappaCross;
    cross.proven = false;
    out.push_back(cross);

    if (p.y > 1.5) { // the Laplace identity behind the t^{3/Y} term needs Y > 3/2
        const std::complex<double> b1sq = d.beta1 * d.beta1;
        ExpansionTerm second;
        second.exponent = 3.0 / p.y;
        second.coefficient =
            -d.beta2.real() / (kPi * p.y) *
                std::pow(d.sigma_y, (3.0 - p.y) / p.y) * gamma_fn(1.0 - 3.0 / p.y) -
            b1sq.real() / (2.0 * kPi * p.y) *
                std::pow(d.sigma_y, (3.0 - 2.0 * p.y) / p.y) *
                gamma_fn((2.0 * p.y - 3.0) / p.y);
        second.mechanism = Mechanism::CandidateSecondBinomial;
        second.proven = false;
        out.push_back(second);
    }
    return out;
}

Expansion expansion_terms(const CgmyParams& p, const DerivedParams& d,
                          bool include_candidates) {
    Expansion e{p, k_cap(p.y), {}};
    const double remainder_order =
        std::max(2.0 - 1.0 / p.y, 2.0 / p.y);

    ExpansionTerm first;
    first.exponent = 1.0 / p.y;
    first.coefficient = d1(p, d);
    first.mechanism = Mechanism::StableFirstOrder;
    e.terms.push_back(first);

    ExpansionTerm second;
    second.exponent = 1.0;
    second.coefficient = d2_closed_fl(p, d);
    second.mechanism = Mechanism::SecondOrder;
    e.terms.push_back(second);

    for (int k = 1; k <= e.k_cap; ++k) {
        ExpansionTerm drift;
        drift.exponent = 2.0 * k - (2.0 * k - 1.0) / p.y;
        drift.coefficient = a_drift(k, p, d);
        drift.mechanism = Mechanism::Drift;
        drift.drift_order = k;
        e.terms.push_back(drift);
    }

    ExpansionTerm binom;
    binom.exponent = 2.0 / p.y;
    binom.coefficient = a12(p, d);
    binom.mechanism = Mechanism::BinomialFirst;
    e.terms.push_back(binom);

    if (include_candidates) {
        for (ExpansionTerm c : higher_candidates(p, d)) {
            e.terms.push_back(c);
        }
    }

    std::stable_sort(e.terms.begin(), e.terms.end(),
                     [](const ExpansionTerm& a, const ExpansionTerm& b) {
                         return a.exponent < b.exponent;
                     });
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        e.terms[i].absorbed = e.terms[i].proven &&
                              e.terms[i].exponent > remainder_order + kTieTol;
        for (std::size_t j = 0; j < e.terms.size(); ++j) {
            if (i != j &&
                std::abs(e.terms[i].exponent - e.terms[j].exponent) <= kTieTol) {
                e.terms[i].tied = true;
            }
        }
    }
    return e;
}

double evaluate_expansion(const Expansion& e, double t, bool include_unproven) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("evaluate_expansion: t must be positive");
    }
    double acc = 0.0;
    for (const ExpansionTerm& term : e.terms) {
        if (!term.proven && !include_unproven) continue;
        acc += term.coefficient * std::pow(t, term.exponent);
    }
    return acc;
}

std::vector<Bifurcation> bifurcations(int n_max, int j_max) {
    std::vector<Bifurcation> out;
    for (int n = 1; n <= n_max; ++n) {
        for (int j = 1; j <= j_max; ++j) {
            const double y = static_cast<double>(n + j) / j;
            if (y > 1.0 && y < 2.0) {
                // odd drift powers carry zero coefficient, so those
                // crossings are suppressed
                out.push_back({n, j, y, j % 2 == 0});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Bifurcation& a, const Bifurcation& b) {
                  if (a.y != b.y) return a.y > b.y;
                  return a.j < b.j;
              });
    return out;
}

std::vector<LatticeRow> exponent_lattice(const std::vector<double>& y_grid) {
    struct Curve {
        const char* label;
        bool vanishes;
        double (*exponent)(double);
    };
    static const Curve curves[] = {
        {"stable_first_order", false, [](double y) { return 1.0 / y; }},
        {"second_order", false, [](double) { return 1.0; }},
        {"drift_squared", false, [](double y) { return 2.0 - 1.0 / y; }},
        {"binomial_first", false, [](double y) { return 2.0 / y; }},
        {"kappa_cross", false, [](double y) { return 1.0 + 1.0 / y; }},
        {"drift_cubic", true, [](double y) { return 3.0 - 2.0 / y; }},
        {"drift_quartic", false, [](double y) { return 4.0 - 3.0 / y; }},
        {"second_binomial", false, [](double y) { return 3.0 / y; }},
        {"drift_quintic", true, [](double y) { return 5.0 - 4.0 / y; }},
    };
    std::vector<LatticeRow> rows;
    for (double y : y_grid) {
        if (!(y > 1.0 && y < 2.0)) {
            throw std::invalid_argument("exponent_lattice: grid must lie in (1, 2)");
        }
        for (const Curve& c : curves) {
            rows.push_back({y, c.exponent(y), c.label, c.vanishes});
        }
    }
    return rows;
}

} // namespace cgmy
