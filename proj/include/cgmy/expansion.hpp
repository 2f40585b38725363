#ifndef CGMY_EXPANSION_HPP
#define CGMY_EXPANSION_HPP

#include <string>
#include <vector>

#include "cgmy/model.hpp"
#include "cgmy/quadrature.hpp"

namespace cgmy {

enum class Mechanism {
    StableFirstOrder,      // d1 at t^{1/Y}
    SecondOrder,           // d2 at t
    Drift,                 // a_{2k,1} at t^{2k - (2k-1)/Y}
    BinomialFirst,         // a_{1,2} at t^{2/Y}
    CandidateKappaCross,   // unproven, t^{1 + 1/Y}
    CandidateSecondBinomial, // unproven, t^{3/Y}, needs Y > 3/2
};

std::string mechanism_name(Mechanism m, int drift_order);

struct ExpansionTerm {
    double exponent = 0.0;
    double coefficient = 0.0;
    Mechanism mechanism = Mechanism::StableFirstOrder;
    int drift_order = 0;  // k for Drift terms
    bool proven = true;
    bool tied = false;    // exponent collides with another term
    bool absorbed = false; // beyond the remainder order o(t^max(2-1/Y, 2/Y))
};

struct Expansion {
    CgmyParams params;
    int k_cap = 2;
    std::vector<ExpansionTerm> terms; // sorted ascending by exponent
};

/// First-order coefficient d1 = Gamma(1 - 1/Y) sigma_Y^{1/Y} / pi.
double d1(const CgmyParams& p, const DerivedParams& d);

/// d2 by quadrature of theta0(w)/w^2 - Re psi0(w)/(w^2 + 1/4).
QuadratureResult d2_integral(const CgmyParams& p, const DerivedParams& d,
                             const QuadratureConfig& cfg = {});

/// Closed-form second-order coefficient
/// (C Gamma(-Y)/2)((M-1)^Y - M^Y - (G+1)^Y + G^Y).
double d2_closed_fl(const CgmyParams& p, const DerivedParams& d);

double a21(const CgmyParams& p, const DerivedParams& d);
double a41(const CgmyParams& p, const DerivedParams& d);
double a12(const CgmyParams& p, const DerivedParams& d);

/// k-th even drift coefficient; a_drift(1) == a21 and a_drift(2) == a41
/// by the same expression.
double a_drift(int k, const CgmyParams& p, const DerivedParams& d);

/// Symmetric Y-stable density at the origin, p_Z(1, 0).
double stable_density_at_zero(const CgmyParams& p, const DerivedParams& d);

/// Drift-series cap floor(1/(2(Y-1))) with a floor of 2.
int k_cap(double y);

/// All proven terms (optionally with the unproven candidates appended),
/// sorted by exponent, exponent ties flagged.
Expansion expansion_terms(const CgmyParams& p, const DerivedParams& d,
                          bool include_candidates = false);

/// The two unproven candidates from the exponent catalog; the t^{3/Y}
/// term is absent for Y <= 3/2.
std::vector<ExpansionTerm> higher_candidates(const CgmyParams& p,
                                             const DerivedParams& d);

/// Sum of coefficient * t^exponent over proven terms (unproven included
/// only on request).
double evaluate_expansion(const Expansion& e, double t,
                          bool include_unproven = false);

struct Bifurcation {
    int n;        // binomial order
    int j;        // drift power
    double y;     // (n + j) / j
    bool effective; // suppressed when the drift power is odd
};

/// All exponent crossings Y = (n+j)/j inside (1, 2).
std::vector<Bifurcation> bifurcations(int n_max, int j_max);

struct LatticeRow {
    double y;
    double exponent;
    std::string label;
    bool coefficient_vanishes;
};

/// Candidate exponent curves over a Y grid, vanishing families flagged.
std::vector<LatticeRow> exponent_lattice(const std::vector<double>& y_grid);

} // namespace cgmy

#endif
