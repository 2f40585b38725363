#include "cgmy/harness.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace cgmy {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Printed cells of the reference verification tables, keyed by parameter
// column and decade exponent (t = 10^-e, e = 2..7).
struct PrintedColumn {
    double c, g, m, y;
    std::array<double, 6> cells;
};

const PrintedColumn kTable1[] = {
    {1, 3, 5, 1.2, {0.95748, 0.99347, 0.99903, 0.99986, 0.99998, 1.00000}},
    {1, 3, 5, 1.3, {0.94573, 0.99031, 0.99834, 0.99972, 0.99995, 0.99999}},
    {1, 3, 5, 1.4, {0.93216, 0.98620, 0.99731, 0.99948, 0.99990, 0.99998}},
};

const PrintedColumn kTable2[] = {
    {1, 3, 5, 1.7, {0.98782, 0.99794, 0.99967, 0.99995, 0.99999, 1.00000}},
    {1, 3, 5, 1.8, {0.99140, 0.99864, 0.99980, 0.99997, 1.00000, 1.00000}},
    {1, 3, 5, 1.9, {0.99396, 0.99905, 0.99987, 0.99998, 1.00000, 1.00000}},
    {2, 2, 3, 1.75, {0.98291, 0.99710, 0.99956, 0.99994, 0.99999, 1.00000}},
};

const PrintedColumn kTable3[] = {
    {1, 3, 5, 1.15, {3.12, 1.85, 0.903, 0.385, 0.151, 0.056}},
    {1, 3, 5, 1.2, {5.12, 3.98, 2.56, 1.45, 0.767, 0.386}},
    {1, 3, 5, 1.3, {13.0, 16.4, 17.5, 16.8, 15.2, 13.3}},
};

const PrintedColumn kTable4[] = {
    {1, 3, 5, 1.2, {0.242, 0.406, 0.562, 0.688, 0.781, 0.848}},
    {1, 3, 5, 1.3, {0.380, 0.572, 0.728, 0.834, 0.901, 0.941}},
    {1, 3, 5, 1.4, {0.493, 0.684, 0.821, 0.904, 0.950, 0.974}},
    {1, 3, 5, 1.7, {0.742, 0.865, 0.937, 0.973, 0.989, 0.996}},
    {1, 3, 5, 1.9, {0.886, 0.942, 0.973, 0.989, 0.996, 0.998}},
};

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::abs(b); }

std::optional<int> decade_of(double t) {
    for (int e = 1; e <= 12; ++e) {
        if (near(t, std::pow(10.0, -e))) return e;
    }
    return std::nullopt;
}

std::optional<double> printed_cell(TableKind kind, const CgmyParams& p,
                                   double t) {
    const PrintedColumn* cols = nullptr;
    std::size_t n = 0;
    switch (kind) {
        case TableKind::A21: cols = kTable1; n = std::size(kTable1); break;
        case TableKind::A12: cols = kTable2; n = std::size(kTable2); break;
        case TableKind::Cubic: cols = kTable3; n = std::size(kTable3); break;
        case TableKind::Convergence: cols = kTable4; n = std::size(kTable4); break;
    }
    const auto e = decade_of(t);
    if (!e || *e < 2 || *e > 7) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
        if (near(p.c, cols[i].c) && near(p.g + 1.0, cols[i].g + 1.0) &&
            near(p.m, cols[i].m) && near(p.y, cols[i].y)) {
            return cols[i].cells[*e - 2];
        }
    }
    return std::nullopt;
}

// Gates.  Tables 1 and 2 gate every printed cell at +-5e-4.
// Table 3 gates Y in {1.15, 1.2} at t >= 1e-5 within 10% relative
// (the Y = 1.3 column approaches zero too slowly and stays informational).
// Table 4 gates t >= 1e-6 within +-0.01 absolute; t = 1e-7 is reproduced
// informationally.
bool row_is_gated(TableKind kind, const CgmyParams& p, double t) {
    switch (kind) {
        case TableKind::A21:
        case TableKind::A12:
            return true;
        case TableKind::Cubic:
            return (near(p.y, 1.15) || near(p.y, 1.2)) && t >= 1e-5 * (1 - 1e-9);
        case TableKind::Convergence:
            return t >= 1e-6 * (1 - 1e-9);
    }
    return false;
}

bool gate_holds(TableKind kind, double ratio, double printed) {
    switch (kind) {
        case TableKind::A21:
        case TableKind::A12:
            return std::abs(ratio - printed) <= 5e-4;
        case TableKind::Cubic:
            return std::abs(ratio - printed) <= 0.10 * std::abs(printed);
        case TableKind::Convergence:
            return std::abs(ratio - printed) <= 0.01;
    }
    return false;
}

std::vector<double> decade_grid(int from_e, int to_e) {
    std::vector<double> t;
    for (int e = from_e; e <= to_e; ++e) t.push_back(std::pow(10.0, -e));
    return t;
}

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

} // namespace

std::string table_kind_name(TableKind kind) {
    switch (kind) {
        case TableKind::A21: return "a21";
        case TableKind::A12: return "a12";
        case TableKind::Cubic: return "cubic";
        case TableKind::Convergence: return "convergence";
    }
    return "?";
}

std::optional<TableKind> parse_table_kind(const std::string& name) {
    if (name == "a21") return TableKind::A21;
    if (name == "a12") return TableKind::A12;
    if (name == "cubic") return TableKind::Cubic;
    if (name == "convergence") return TableKind::Convergence;
    return std::nullopt;
}

std::string params_label(const CgmyParams& p) {
    return "C=" + format_double("%g", p.c) + ";G=" + format_double("%g", p.g) +
           ";M=" + format_double("%g", p.m);
}

GridSpec default_table_spec(TableKind kind) {
    GridSpec spec;
    spec.target = kind;
    spec.t_values = decade_grid(2, 7);
    switch (kind) {
        case TableKind::A21:
            spec.parameter_sets = {{1, 3, 5, 1.2}, {1, 3, 5, 1.3}, {1, 3, 5, 1.4}};
            break;
        case TableKind::A12:
            spec.parameter_sets = {
                {1, 3, 5, 1.7}, {1, 3, 5, 1.8}, {1, 3, 5, 1.9}, {2, 2, 3, 1.75}};
            break;
        case TableKind::Cubic:
            spec.parameter_sets = {{1, 3, 5, 1.15}, {1, 3, 5, 1.2}, {1, 3, 5, 1.3}};
            break;
        case TableKind::Convergence:
            spec.parameter_sets = {{1, 3, 5, 1.2},
                                   {1, 3, 5, 1.3},
                                   {1, 3, 5, 1.4},
                                   {1, 3, 5, 1.7},
                                   {1, 3, 5, 1.9}};
            break;
    }
    return spec;
}

std::vector<TableRow> run_table(const GridSpec& spec,
                                const QuadratureConfig& cfg) {
    if (spec.parameter_sets.empty()) {
        throw std::invalid_argument("run_table: parameter_sets must be non-empty");
    }
    for (std::size_t i = 1; i < spec.t_values.size(); ++i) {
        if (!(spec.t_values[i] < spec.t_values[i - 1])) {
            throw std::invalid_argument("run_table: t_values must be descending");
        }
    }

    std::vector<TableRow> rows;
    for (const CgmyParams& p : spec.parameter_sets) {
        const DerivedParams d = derive(p);
        for (double t : spec.t_values) {
            TableRow row;
            row.params_label = params_label(p);
            row.y = p.y;
            row.t = t;
            row.printed = printed_cell(spec.target, p, t);
            row.gated = row.printed && row_is_gated(spec.target, p, t);
            try {
                QuadratureResult q;
                switch (spec.target) {
                    case TableKind::A21:
                        q = laplace_check_a21(t, p, d, cfg);
                        row.reference = a21(p, d) * std::pow(t, 2.0 - 1.0 / p.y);
                        break;
                    case TableKind::A12:
                        q = laplace_check_a12(t, p, d, cfg);
                        row.reference = a12(p, d) * std::pow(t, 2.0 / p.y);
                        break;
                    case TableKind::Cubic:
                        q = remainder_r4(t, p, d, cfg);
                        row.reference = std::pow(t, 3.0 - 2.0 / p.y);
                        break;
                    case TableKind::Convergence:
                        // regime-correct remainder: R5 below 5/4, R4 on
                        // (5/4, 3/2), R3 above 3/2
                        if (p.y < 1.25) {
                            q = remainder_r5(t, p, d, cfg);
                        } else if (p.y < 1.5) {
                            q = remainder_r4(t, p, d, cfg);
                        } else {
                            q = remainder_r3(t, p, d, cfg);
                        }
                        row.reference = a12(p, d) * std::pow(t, 2.0 / p.y);
                        break;
                }
                row.numerator = q.value;
                row.quad_error = q.error_estimate;
                row.converged = q.converged;
                row.ratio = row.reference != 0.0 ? row.numerator / row.reference
                                                 : kNan;
                if (!q.converged) {
                    row.within_gate = false;
                } else if (row.gated) {
                    row.within_gate = gate_holds(spec.target, row.ratio, *row.printed);
                }
            } catch (const std::exception&) {
                row.numerator = kNan;
                row.ratio = kNan;
                row.quad_error = kNan;
                row.converged = false;
                row.within_gate = false;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

HeatmapResult run_heatmap(double y, double c,
                          std::array<double, 2> m_range, int m_steps,
                          std::array<double, 2> g_range, int g_steps,
                          const QuadratureConfig& cfg) {
    if (m_steps < 1 || g_steps < 1) {
        throw std::invalid_argument("run_heatmap: steps must be positive");
    }
    HeatmapResult out;
    out.y = y;
    out.c = c;
    for (int i = 0; i < m_steps; ++i) {
        const double m =
            m_steps == 1 ? m_range[0]
                         : m_range[0] + (m_range[1] - m_range[0]) * i / (m_steps - 1);
        for (int j = 0; j < g_steps; ++j) {
            const double g =
                g_steps == 1
                    ? g_range[0]
                    : g_range[0] + (g_range[1] - g_range[0]) * j / (g_steps - 1);
            HeatmapCell cell;
            cell.m = m;
            cell.g = g;
            try {
                const CgmyParams p(c, g, m, y);
                const DerivedParams d = derive(p);
                const QuadratureResult q = d2_integral(p, d, cfg);
                cell.d2_quadrature = q.value;
                cell.d2_closed = d2_closed_fl(p, d);
                cell.diff = q.value - cell.d2_closed;
                cell.quad_error = q.error_estimate;
                cell.converged = q.converged;
                cell.within_gate = q.converged && std::abs(cell.diff) <= 5e-6;
            } catch (const std::exception&) {
                cell.d2_quadrature = kNan;
                cell.d2_closed = kNan;
                cell.diff = kNan;
                cell.quad_error = kNan;
                cell.converged = false;
                cell.within_gate = false;
            }
            out.cells.push_back(cell);
        }
    }
    return out;
}

LatticeResult run_lattice(const std::vector<double>& y_grid, int n_max,
                          int j_max) {
    LatticeResult out;
    out.rows = exponent_lattice(y_grid);
    out.bifurcation_list = bifurcations(n_max, j_max);
    out.markers = {1.25, 1.5};
    return out;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
    std::string csv = "params,Y,t,numerator,reference,ratio,quad_error,within_gate\n";
    for (const TableRow& r : rows) {
        csv += r.params_label + ',' + format_double("%g", r.y) + ',' +
               format_double("%.0e", r.t) + ',' +
               format_double("%.6e", r.numerator) + ',' +
               format_double("%.6e", r.reference) + ',' +
               format_double("%.6g", r.ratio) + ',' +
               format_double("%.3e", r.quad_error) + ',' +
               (r.within_gate ? "true" : "false") + '\n';
    }
    return csv;
}

nlohmann::json table_to_json(const std::vector<TableRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const TableRow& r : rows) {
        nlohmann::json item{
            {"params", r.params_label}, {"Y", r.y},
            {"t", r.t},                 {"numerator", r.numerator},
            {"reference", r.reference}, {"ratio", r.ratio},
            {"quad_error", r.quad_error}, {"within_gate", r.within_gate},
            {"gated", r.gated},         {"converged", r.converged},
        };
        if (r.printed) item["printed"] = *r.printed;
        arr.push_back(item);
    }
    return arr;
}

std::string heatmap_to_csv(const HeatmapResult& hm) {
    std::string csv = "Y,C,M,G,d2_integral,d2_closed_fl,diff,quad_error,within_gate\n";
    for (const HeatmapCell& cell : hm.cells) {
        csv += format_double("%g", hm.y) + ',' + format_double("%g", hm.c) + ',' +
               format_double("%.6g", cell.m) + ',' +
               format_double("%.6g", cell.g) + ',' +
               format_double("%.12e", cell.d2_quadrature) + ',' +
               format_double("%.12e", cell.d2_closed) + ',' +
               format_double("%.6e", cell.diff) + ',' +
               format_double("%.3e", cell.quad_error) + ',' +
               (cell.within_gate ? "true" : "false") + '\n';
    }
    return csv;
}

nlohmann::json heatmap_to_json(const HeatmapResult& hm) {
    nlohmann::json arr = nlohmann::json::array();
    for (const HeatmapCell& cell : hm.cells) {
        arr.push_back({{"M", cell.m},
                       {"G", cell.g},
                       {"d2_integral", cell.d2_quadrature},
                       {"d2_closed_fl", cell.d2_closed},
                       {"diff", cell.diff},
                       {"quad_error", cell.quad_error},
                       {"within_gate", cell.within_gate},
                       {"converged", cell.converged}});
    }
    return {{"Y", hm.y}, {"C", hm.c}, {"cells", arr}};
}

std::string lattice_to_csv(const LatticeResult& lat) {
    std::string csv = "kind,Y,exponent,label,vanishes\n";
    for (const LatticeRow& row : lat.rows) {
        csv += "curve," + format_double("%.6g", row.y) + ',' +
               format_double("%.10g", row.exponent) + ',' + row.label + ',' +
               (row.coefficient_vanishes ? "true" : "false") + '\n';
    }
    for (const Bifurcation& b : lat.bifurcation_list) {
        csv += "bifurcation," + format_double("%.10g", b.y) + ",,n=" +
               std::to_string(b.n) + " j=" + std::to_string(b.j) + ',' +
               (b.effective ? "false" : "true") + '\n';
    }
    for (double m : lat.markers) {
        csv += "marker," + format_double("%g", m) + ",,bifurcation_marker,false\n";
    }
    return csv;
}

nlohmann::json lattice_to_json(const LatticeResult& lat) {
    nlohmann::json rows = nlohmann::json::array();
    for (const LatticeRow& row : lat.rows) {
        rows.push_back({{"Y", row.y},
                        {"exponent", row.exponent},
                        {"label", row.label},
                        {"coefficient_vanishes", row.coefficient_vanishes}});
    }
    nlohmann::json bifs = nlohmann::json::array();
    for (const Bifurcation& b : lat.bifurcation_list) {
        bifs.push_back({{"n", b.n}, {"j", b.j}, {"Y", b.y}, {"effective", b.effective}});
    }
    return {{"curves", rows}, {"bifurcations", bifs}, {"markers", lat.markers}};
}

nlohmann::json expansion_to_json(const Expansion& e) {
    nlohmann::json terms = nlohmann::json::array();
    for (const ExpansionTerm& term : e.terms) {
        terms.push_back({{"exponent", term.exponent},
                         {"coefficient", term.coefficient},
                         {"mechanism", mechanism_name(term.mechanism, term.drift_order)},
                         {"proven", term.proven},
                         {"tied", term.tied},
                         {"absorbed", term.absorbed}});
    }
    return {{"Y", e.params.y}, {"k_cap", e.k_cap}, {"terms", terms}};
}

} // namespace cgmy
