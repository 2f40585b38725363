#include "cgmy/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>
#include <stdexcept>
#include <string>

#include "cgmy/errors.hpp"
#include "cgmy/special_functions.hpp"

namespace cgmy {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMinPanelWidth = 1e-300;

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0,
};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278,
};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767,
    0.3818300505051189, 0.4179591836734694,
};

// Integrand over a possibly tail-mapped panel.  For the mapped segment the
// engine integrates g(s) = f(B/s) B / s^2 over (0, 1].
struct Segment {
    bool mapped;
    double tail_start; // B for the mapped segment
};

struct Panel {
    double a, b;
    double value;
    double error;
    int segment;
    long id; // creation order, deterministic tie-break
};

struct PanelWorse {
    bool operator()(const Panel& lhs, const Panel& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.id > rhs.id;
    }
};

class Evaluator {
public:
    Evaluator(const std::function<double(double)>& f) : f_(f) {}

    double operator()(double x, const Segment& seg) {
        double abscissa = x;
        double v;
        if (seg.mapped) {
            abscissa = seg.tail_start / x;
            v = f_(abscissa) * seg.tail_start / (x * x);
        } else {
            v = f_(x);
        }
        ++count_;
        if (!std::isfinite(v)) {
            throw IntegrandError(
                "integrate: non-finite integrand value at x = " +
                    std::to_string(abscissa),
                abscissa);
        }
        return v;
    }

    long count() const { return count_; }

private:
    const std::function<double(double)>& f_;
    long count_ = 0;
};

// One G7-K15 application with the QUADPACK error estimate.
Panel evaluate_panel(Evaluator& eval, const Segment& seg, double a, double b,
                     int segment_index, long id) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = eval(centre, seg);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv1[j] = eval(centre - dx, seg);
        fv2[j] = eval(centre + dx, seg);
        const double sum = fv1[j] + fv2[j];
        resk += kWgk[j] * sum;
        if (j % 2 == 1) { // Gauss nodes sit at the odd Kronrod indices
            resg += kWg[(j - 1) / 2] * sum;
        }
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }

    double err = std::abs((resk - resg) * half);
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (10.0 * kEps)) {
        err = std::max(err, 10.0 * kEps * resabs);
    }
    return Panel{a, b, resk * half, err, segment_index, id};
}

} // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0)) {
        throw std::invalid_argument("QuadratureConfig: rel_tol must be positive");
    }
    if (!(abs_tol > 0.0)) {
        throw std::invalid_argument("QuadratureConfig: abs_tol must be positive");
    }
    if (max_subdivisions <= 0) {
        throw std::invalid_argument(
            "QuadratureConfig: max_subdivisions must be positive");
    }
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > breakpoints[i - 1])) {
            throw std::invalid_argument(
                "QuadratureConfig: breakpoints must be strictly increasing");
        }
    }
}

QuadratureResult integrate(const std::function<double(double)>& f,
                           double lower, double upper,
                           const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(lower >= 0.0) || std::isnan(upper)) {
        throw std::invalid_argument("integrate: bad interval");
    }
    if (!(upper > lower)) {
        throw std::invalid_argument("integrate: upper must exceed lower");
    }

    const bool infinite = std::isinf(upper);

    // Finite sub-segments from the breakpoints, then the mapped tail.
    std::vector<Segment> segments;
    std::vector<std::array<double, 2>> spans;
    double last = lower;
    for (double bp : cfg.breakpoints) {
        if (bp <= lower || bp >= upper) continue;
        spans.push_back({last, bp});
        segments.push_back({false, 0.0});
        last = bp;
    }
    if (infinite) {
        double tail_start = last;
        if (tail_start <= 0.0) {
            tail_start = 1.0;
            spans.push_back({last, tail_start});
            segments.push_back({false, 0.0});
        }
        // w = B/s maps [B, inf) onto (0, 1]
        spans.push_back({0.0, 1.0});
        segments.push_back({true, tail_start});
    } else {
        spans.push_back({last, upper});
        segments.push_back({false, 0.0});
    }

    Evaluator eval(f);
    std::vector<Panel> panels;
    long next_id = 0;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i < spans.size(); ++i) {
        Panel p = evaluate_panel(eval, segments[i], spans[i][0], spans[i][1],
                                 static_cast<int>(i), next_id++);
        total += p.value;
        total_err += p.error;
        panels.push_back(p);
    }
    std::make_heap(panels.begin(), panels.end(), PanelWorse{});

    const auto tolerance = [&](double value) {
        return std::max(cfg.rel_tol * std::abs(value), cfg.abs_tol);
    };

    int subdivisions = 0;
    bool aborted = false;
    while (total_err > tolerance(total) && subdivisions < cfg.max_subdivisions) {
        const Panel worst = panels.front();
        if (worst.error == 0.0) break;
        if (worst.b - worst.a < kMinPanelWidth) {
            aborted = true; // likely an undeclared singularity
            break;
        }
        std::pop_heap(panels.begin(), panels.end(), PanelWorse{});
        panels.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment& seg = segments[worst.segment];
        Panel left = evaluate_panel(eval, seg, worst.a, mid, worst.segment, next_id++);
        Panel right = evaluate_panel(eval, seg, mid, worst.b, worst.segment, next_id++);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push_back(left);
        std::push_heap(panels.begin(), panels.end(), PanelWorse{});
        panels.push_back(right);
        std::push_heap(panels.begin(), panels.end(), PanelWorse{});
        ++subdivisions;
    }

    // re-sum in creation order with extended precision; the incremental
    // running totals only steer the subdivision loop
    std::sort(panels.begin(), panels.end(),
              [](const Panel& a, const Panel& b) { return a.id < b.id; });
    long double value_sum = 0.0L;
    long double err_sum = 0.0L;
    for (const Panel& p : panels) {
        value_sum += p.value;
        err_sum += p.error;
    }

    QuadratureResult out;
    out.value = static_cast<double>(value_sum);
    out.error_estimate = static_cast<double>(err_sum);
    out.evaluations = eval.count();
    out.converged = !aborted && out.error_estimate <= tolerance(out.value);
    return out;
}

double laplace_exp_integral(double lambda, double y, double p) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("laplace_exp_integral: lambda must be positive");
    }
    if (!(y > 0.0)) {
        throw std::invalid_argument("laplace_exp_integral: Y must be positive");
    }
    if (!(p >= 0.0)) {
        throw std::invalid_argument("laplace_exp_integral: p must be non-negative");
    }
    const double a = (p + 1.0) / y;
    return std::pow(lambda, -a) * gamma_fn(a) / y;
}

double laplace_frac_integral(double lambda, double y, double alpha) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("laplace_frac_integral: lambda must be positive");
    }
    if (!(y > 0.0)) {
        throw std::invalid_argument("laplace_frac_integral: Y must be positive");
    }
    if (!(alpha > -1.0 && alpha < 0.0)) {
        throw std::invalid_argument(
            "laplace_frac_integral: alpha must lie in (-1, 0)");
    }
    return -std::pow(lambda, -alpha) * gamma_fn(alpha) / y;
}

std::vector<double> laplace_breakpoints(double lambda, double y) {
    if (!(lambda > 0.0) || !(y > 0.0)) {
        throw std::invalid_argument("laplace_breakpoints: bad lambda or Y");
    }
    const double wstar = std::pow(lambda, -1.0 / y);
    std::vector<double> bps;
    if (wstar > 1.0) {
        for (double b = 1.0; b < wstar; b *= 10.0) bps.push_back(b);
        bps.push_back(wstar);
        bps.push_back(10.0 * wstar);
    } else if (wstar < 1.0) {
        bps = {wstar, 1.0, 10.0};
    } else {
        bps = {1.0, 10.0};
    }
    return bps;
}

} // namespace cgmy
