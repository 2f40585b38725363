#ifndef CGMY_HARNESS_HPP
#define CGMY_HARNESS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgmy/expansion.hpp"
#include "cgmy/model.hpp"
#include "cgmy/pricer.hpp"

namespace cgmy {

enum class TableKind { A21, A12, Cubic, Convergence };

std::string table_kind_name(TableKind kind);
std::optional<TableKind> parse_table_kind(const std::string& name);

struct GridSpec {
    std::vector<CgmyParams> parameter_sets;
    std::vector<double> t_values; // descending decade grid
    TableKind target = TableKind::A21;
};

struct TableRow {
    std::string params_label;
    double y = 0.0;
    double t = 0.0;
    double numerator = 0.0;
    double reference = 0.0;
    double ratio = 0.0;
    double quad_error = 0.0;
    bool within_gate = true;
    bool gated = false;                  // row participates in pass/fail
    std::optional<double> printed;       // reference table cell, when reproduced
    bool converged = true;
};

/// Paper defaults for each table kind (parameter columns and decade grid).
GridSpec default_table_spec(TableKind kind);

/// Evaluate one verification table.  Quadrature non-convergence marks the
/// row (within_gate = false), it never aborts the table.
std::vector<TableRow> run_table(const GridSpec& spec,
                                const QuadratureConfig& cfg = {});

struct HeatmapCell {
    double m = 0.0, g = 0.0;
    double d2_quadrature = 0.0;
    double d2_closed = 0.0;
    double diff = 0.0;
    double quad_error = 0.0;
    bool within_gate = false;
    bool converged = false;
};

struct HeatmapResult {
    double y = 0.0, c = 0.0;
    std::vector<HeatmapCell> cells;
};

/// d2 integral-vs-closed-form difference over an (M, G) grid.  Per-cell
/// failures are recorded; the grid always completes.
HeatmapResult run_heatmap(double y, double c,
                          std::array<double, 2> m_range, int m_steps,
                          std::array<double, 2> g_range, int g_steps,
                          const QuadratureConfig& cfg = {});

struct LatticeResult {
    std::vector<LatticeRow> rows;
    std::vector<Bifurcation> bifurcation_list;
    std::vector<double> markers; // dotted bifurcation lines (5/4 and 3/2)
};

LatticeResult run_lattice(const std::vector<double>& y_grid, int n_max,
                          int j_max);

// --- emission ---

std::string table_to_csv(const std::vector<TableRow>& rows);
nlohmann::json table_to_json(const std::vector<TableRow>& rows);

std::string heatmap_to_csv(const HeatmapResult& hm);
nlohmann::json heatmap_to_json(const HeatmapResult& hm);

std::string lattice_to_csv(const LatticeResult& lat);
nlohmann::json lattice_to_json(const LatticeResult& lat);

nlohmann::json expansion_to_json(const Expansion& e);

std::string params_label(const CgmyParams& p);

} // namespace cgmy

#endif
