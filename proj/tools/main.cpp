#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgmy/errors.hpp"
#include "cgmy/expansion.hpp"
#include "cgmy/harness.hpp"
#include "cgmy/model.hpp"
#include "cgmy/pricer.hpp"
#include "cgmy/quadrature.hpp"

namespace {

using nlohmann::json;

// key=value lines (# comments) or a JSON object; values kept as strings
// and converted on use so a coeffs JSON can be re-ingested directly.
std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot open '" + path + "'");
    }
    std::map<std::string, std::string> out;
    std::string first;
    in >> std::ws;
    if (in.peek() == '{') {
        json j;
        in >> j;
        for (auto& [key, value] : j.items()) {
            if (value.is_number()) {
                std::ostringstream os;
                os.precision(17);
                os << value.get<double>();
                out[key] = os.str();
            } else if (value.is_string()) {
                out[key] = value.get<std::string>();
            } else if (value.is_boolean()) {
                out[key] = value.get<bool>() ? "1" : "0";
            }
        }
        return out;
    }
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) out[key] = value;
    }
    return out;
}

struct CommonOpts {
    std::optional<double> c, g, m, y, t, k;
    std::optional<double> rel_tol, abs_tol;
    std::optional<int> max_subdivisions;
    std::optional<double> tmin, tmax;
    std::optional<int> points;
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::map<std::string, std::string> config;

    void add_model_flags(CLI::App* cmd) {
        cmd->add_option("--C", c, "jump intensity C > 0");
        cmd->add_option("--G", g, "left tempering rate G >= 0");
        cmd->add_option("--M", m, "right tempering rate M > 1");
        cmd->add_option("--Y", y, "activity index Y in (1, 2)");
    }
    void add_common_flags(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file (key=value or JSON)");
        cmd->add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
        cmd->add_option("--abs-tol", abs_tol, "quadrature absolute tolerance");
        cmd->add_option("--max-subdivisions", max_subdivisions,
                        "quadrature subdivision cap");
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--format", format, "csv|json (default csv)")
            ->check(CLI::IsMember({"csv", "json"}));
    }

    void finalize() {
        if (config_path.empty()) {
            if (const char* env = std::getenv("CGMY_ATM_CONFIG")) config_path = env;
        }
        if (!config_path.empty()) config = load_config(config_path);
        auto fill = [&](std::optional<double>& slot, const char* key) {
            if (!slot && config.count(key)) slot = std::stod(config.at(key));
        };
        fill(c, "C"); fill(g, "G"); fill(m, "M"); fill(y, "Y");
        fill(t, "t"); fill(k, "k");
        fill(rel_tol, "rel_tol"); fill(abs_tol, "abs_tol");
        fill(tmin, "tmin"); fill(tmax, "tmax");
        if (!max_subdivisions && config.count("max_subdivisions")) {
            max_subdivisions = std::stoi(config.at("max_subdivisions"));
        }
        if (!points && config.count("points")) {
            points = std::stoi(config.at("points"));
        }
        if (format == "csv" && config.count("format")) format = config.at("format");
    }

    bool has_model() const { return c && g && m && y; }

    cgmy::CgmyParams params() const {
        if (!has_model()) {
            throw std::invalid_argument(
                "model flags --C --G --M --Y are required (or a config file)");
        }
        return cgmy::CgmyParams(*c, *g, *m, *y);
    }

    cgmy::QuadratureConfig quad() const {
        cgmy::QuadratureConfig qc;
        if (rel_tol) qc.rel_tol = *rel_tol;
        if (abs_tol) qc.abs_tol = *abs_tol;
        if (max_subdivisions) qc.max_subdivisions = *max_subdivisions;
        return qc;
    }

    std::vector<double> t_grid() const {
        std::vector<double> grid;
        if (tmin && tmax && points && *points > 1) {
            const double lo = std::log10(*tmin), hi = std::log10(*tmax);
            for (int i = 0; i < *points; ++i) {
                grid.push_back(std::pow(10.0, hi - (hi - lo) * i / (*points - 1)));
            }
        } else if (t) {
            grid.push_back(*t);
        }
        return grid;
    }
};

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(opts.out_path);
        if (!out) {
            throw std::invalid_argument("cannot write --out file '" + opts.out_path + "'");
        }
        out << text;
    }
}

double require_positive_t(const std::optional<double>& t) {
    if (!t) throw std::invalid_argument("t must be provided (--t)");
    if (!(*t > 0.0)) throw std::invalid_argument("t must be positive");
    return *t;
}

json coeffs_json(const cgmy::CgmyParams& p, const cgmy::DerivedParams& d) {
    return json{{"C", p.c},
                {"G", p.g},
                {"M", p.m},
                {"Y", p.y},
                {"tilde_b", d.tilde_b},
                {"kappa", d.kappa},
                {"sigma_y", d.sigma_y},
                {"m_shift", d.m_shift},
                {"g_shift", d.g_shift},
                {"beta1_re", d.beta1.real()},
                {"beta1_im", d.beta1.imag()},
                {"beta2_re", d.beta2.real()},
                {"beta2_im", d.beta2.imag()},
                {"d1", cgmy::d1(p, d)},
                {"d2_closed_fl", cgmy::d2_closed_fl(p, d)},
                {"a21", cgmy::a21(p, d)},
                {"a41", cgmy::a41(p, d)},
                {"a12", cgmy::a12(p, d)},
                {"stable_density_at_zero", cgmy::stable_density_at_zero(p, d)},
                {"k_cap", cgmy::k_cap(p.y)}};
}

int run_price(CommonOpts& opts) {
    opts.finalize();
    const cgmy::CgmyParams p = opts.params();
    const cgmy::DerivedParams d = cgmy::derive(p);
    const double kk = opts.k.value_or(0.0);
    std::vector<double> grid = opts.t_grid();
    if (grid.empty()) require_positive_t(opts.t);

    json arr = json::array();
    std::string csv = "t,k,price,quad_error,converged\n";
    for (double t : grid) {
        const cgmy::PriceRequest req(t, kk);
        const cgmy::QuadratureResult r =
            req.k == 0.0 ? cgmy::price_atm(req.t, p, d, opts.quad())
                         : cgmy::price(req.t, req.k, p, d, opts.quad());
        if (!r.converged) {
            throw cgmy::NonConvergenceError("price: quadrature did not converge",
                                            r.value, r.error_estimate, r.evaluations);
        }
        arr.push_back({{"t", t}, {"k", kk}, {"price", r.value},
                       {"quad_error", r.error_estimate}, {"converged", r.converged}});
        char line[160];
        std::snprintf(line, sizeof(line), "%.6e,%g,%.17g,%.3e,true\n", t, kk,
                      r.value, r.error_estimate);
        csv += line;
    }
    emit(opts, opts.format == "json" ? arr.dump(2) : csv);
    return 0;
}

int run_coeffs(CommonOpts& opts) {
    opts.finalize();
    const cgmy::CgmyParams p = opts.params();
    const cgmy::DerivedParams d = cgmy::derive(p);
    const json j = coeffs_json(p, d);
    if (opts.format == "json") {
        emit(opts, j.dump(2));
    } else {
        std::string csv = "key,value\n";
        for (auto& [key, value] : j.items()) {
            std::ostringstream os;
            os.precision(17);
            os << value;
            csv += key + ',' + os.str() + '\n';
        }
        emit(opts, csv);
    }
    return 0;
}

int run_expand(CommonOpts& opts, bool include_unproven) {
    opts.finalize();
    const cgmy::CgmyParams p = opts.params();
    const cgmy::DerivedParams d = cgmy::derive(p);
    if (include_unproven && p.y <= 1.5) {
        std::cerr << "note: the t^(3/Y) candidate requires Y > 3/2 and is omitted\n";
    }
    const cgmy::Expansion e = cgmy::expansion_terms(p, d, include_unproven);
    json j = cgmy::expansion_to_json(e);
    if (opts.t) {
        const double t = require_positive_t(opts.t);
        j["t"] = t;
        j["value"] = cgmy::evaluate_expansion(e, t, include_unproven);
    }
    if (opts.format == "json") {
        emit(opts, j.dump(2));
    } else {
        std::string csv = "exponent,coefficient,mechanism,proven,tied,absorbed\n";
        for (const cgmy::ExpansionTerm& term : e.terms) {
            char line[200];
            std::snprintf(line, sizeof(line), "%.10g,%.17g,%s,%s,%s,%s\n",
                          term.exponent, term.coefficient,
                          cgmy::mechanism_name(term.mechanism, term.drift_order).c_str(),
                          term.proven ? "true" : "false",
                          term.tied ? "true" : "false",
                          term.absorbed ? "true" : "false");
            csv += line;
        }
        emit(opts, csv);
    }
    return 0;
}

int run_remainder(CommonOpts& opts) {
    opts.finalize();
    const cgmy::CgmyParams p = opts.params();
    const cgmy::DerivedParams d = cgmy::derive(p);
    std::vector<double> grid = opts.t_grid();
    if (grid.empty()) require_positive_t(opts.t);

    json arr = json::array();
    std::string csv = "t,r3,r4,r5,quad_error,converged\n";
    for (double t : grid) {
        if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
        const cgmy::QuadratureResult r3 = cgmy::remainder_r3(t, p, d, opts.quad());
        const double r4 = r3.value - cgmy::a21(p, d) * std::pow(t, 2.0 - 1.0 / p.y);
        const double r5 = r4 - cgmy::a41(p, d) * std::pow(t, 4.0 - 3.0 / p.y);
        if (!r3.converged) {
            throw cgmy::NonConvergenceError("remainder: quadrature did not converge",
                                            r3.value, r3.error_estimate,
                                            r3.evaluations);
        }
        arr.push_back({{"t", t}, {"r3", r3.value}, {"r4", r4}, {"r5", r5},
                       {"quad_error", r3.error_estimate}});
        char line[200];
        std::snprintf(line, sizeof(line), "%.6e,%.17g,%.17g,%.17g,%.3e,true\n", t,
                      r3.value, r4, r5, r3.error_estimate);
        csv += line;
    }
    emit(opts, opts.format == "json" ? arr.dump(2) : csv);
    return 0;
}

int run_table(CommonOpts& opts, const std::string& kind_name) {
    opts.finalize();
    const auto kind = cgmy::parse_table_kind(kind_name);
    if (!kind) {
        throw std::invalid_argument("--kind must be one of a21|a12|cubic|convergence");
    }
    cgmy::GridSpec spec = cgmy::default_table_spec(*kind);
    if (opts.has_model()) {
        spec.parameter_sets = {opts.params()};
    }
    if (opts.tmin && opts.tmax && opts.points) {
        spec.t_values = opts.t_grid();
    }
    const std::vector<cgmy::TableRow> rows = cgmy::run_table(spec, opts.quad());
    emit(opts, opts.format == "json" ? cgmy::table_to_json(rows).dump(2)
                                     : cgmy::table_to_csv(rows));
    for (const cgmy::TableRow& row : rows) {
        if (!row.within_gate) return 2;
    }
    return 0;
}

int run_heatmap(CommonOpts& opts, double mlo, double mhi, int msteps,
                double glo, double ghi, int gsteps) {
    opts.finalize();
    const double y = opts.y.value_or(1.5);
    const double c = opts.c.value_or(1.0);
    const cgmy::HeatmapResult hm = cgmy::run_heatmap(
        y, c, {mlo, mhi}, msteps, {glo, ghi}, gsteps, opts.quad());
    emit(opts, opts.format == "json" ? cgmy::heatmap_to_json(hm).dump(2)
                                     : cgmy::heatmap_to_csv(hm));
    for (const cgmy::HeatmapCell& cell : hm.cells) {
        if (!cell.within_gate) return 2;
    }
    return 0;
}

int run_lattice(CommonOpts& opts, double ymin, double ymax, int ypoints,
                int nmax, int jmax) {
    opts.finalize();
    std::vector<double> grid;
    for (int i = 0; i < ypoints; ++i) {
        grid.push_back(ymin + (ymax - ymin) * i / (ypoints - 1));
    }
    const cgmy::LatticeResult lat = cgmy::run_lattice(grid, nmax, jmax);
    emit(opts, opts.format == "json" ? cgmy::lattice_to_json(lat).dump(2)
                                     : cgmy::lattice_to_csv(lat));
    return 0;
}

int run_check_laplace(CommonOpts& opts) {
    opts.finalize();
    const double lambdas[] = {1e-6, 1e-4, 1e-2, 1.0};
    const double ys[] = {1.1, 1.3, 1.5, 1.7, 1.9};
    const double ps[] = {0.0, 2.0, 4.0};
    std::string csv = "lambda,Y,kind,arg,closed,quadrature,rel_err,within_gate\n";
    bool all_ok = true;
    for (double lam : lambdas) {
        for (double y : ys) {
            cgmy::QuadratureConfig qc = opts.quad();
            qc.breakpoints = cgmy::laplace_breakpoints(lam, y);
            for (double pp : ps) {
                const double closed = cgmy::laplace_exp_integral(lam, y, pp);
                const auto q = cgmy::integrate(
                    [&](double w) {
                        return std::pow(w, pp) * std::exp(-lam * std::pow(w, y));
                    },
                    0.0, std::numeric_limits<double>::infinity(), qc);
                const double rel = std::abs(q.value - closed) / std::abs(closed);
                const bool ok = q.converged && rel <= 1e-10;
                all_ok = all_ok && ok;
                char line[200];
                std::snprintf(line, sizeof(line), "%g,%g,exp,p=%g,%.17g,%.17g,%.3e,%s\n",
                              lam, y, pp, closed, q.value, rel, ok ? "true" : "false");
                csv += line;
            }
            const double alpha = 1.0 - 2.0 / y;
            const double closed = cgmy::laplace_frac_integral(lam, y, alpha);
            const auto q = cgmy::integrate(
                [&](double u) {
                    return -std::expm1(-lam * std::pow(u, y)) *
                           std::pow(u, alpha * y - 1.0);
                },
                0.0, std::numeric_limits<double>::infinity(), qc);
            const double rel = std::abs(q.value - closed) / std::abs(closed);
            const bool ok = q.converged && rel <= 1e-10;
            all_ok = all_ok && ok;
            char line[200];
            std::snprintf(line, sizeof(line), "%g,%g,frac,alpha=%g,%.17g,%.17g,%.3e,%s\n",
                          lam, y, alpha, closed, q.value, rel, ok ? "true" : "false");
            csv += line;
        }
    }
    emit(opts, csv);
    return all_ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Short-maturity ATM option asymptotics for the exponential CGMY model"};
    app.require_subcommand(1);
    app.footer(
        "examples:\n"
        "  cgmy-atm price --C 1 --G 3 --M 5 --Y 1.5 --t 1e-3\n"
        "  cgmy-atm coeffs --C 1 --G 3 --M 5 --Y 1.7 --format json\n"
        "  cgmy-atm expand --C 1 --G 3 --M 5 --Y 1.5 --t 1e-4 --format json\n"
        "  cgmy-atm remainder --C 1 --G 3 --M 5 --Y 1.7 --t 1e-2\n"
        "  cgmy-atm table --kind a21 --out a21.csv\n"
        "  cgmy-atm heatmap --Y 1.5 --out fig1.csv\n"
        "  cgmy-atm lattice --out fig2.csv\n"
        "  cgmy-atm check-laplace\n");

    CommonOpts price_opts, coeffs_opts, expand_opts, rem_opts, table_opts,
        heat_opts, lat_opts, lap_opts;

    auto* price_cmd = app.add_subcommand(
        "price", "Lipton-Lewis call price; e.g. price --C 1 --G 3 --M 5 --Y 1.5 --t 1e-3");
    price_opts.add_model_flags(price_cmd);
    price_opts.add_common_flags(price_cmd);
    price_cmd->add_option("--t", price_opts.t, "time to maturity (years)");
    price_cmd->add_option("--k", price_opts.k, "log-moneyness log(S0/K), default 0");
    price_cmd->add_option("--tmin", price_opts.tmin, "sweep: smallest t");
    price_cmd->add_option("--tmax", price_opts.tmax, "sweep: largest t");
    price_cmd->add_option("--points", price_opts.points, "sweep: number of points");

    auto* coeffs_cmd = app.add_subcommand(
        "coeffs", "closed-form coefficients; e.g. coeffs --C 1 --G 3 --M 5 --Y 1.7 --format json");
    coeffs_opts.add_model_flags(coeffs_cmd);
    coeffs_opts.add_common_flags(coeffs_cmd);

    bool include_unproven = false;
    auto* expand_cmd = app.add_subcommand(
        "expand", "asymptotic expansion terms; e.g. expand --C 1 --G 3 --M 5 --Y 1.5 --format json");
    expand_opts.add_model_flags(expand_cmd);
    expand_opts.add_common_flags(expand_cmd);
    expand_cmd->add_option("--t", expand_opts.t, "also evaluate the sum at t");
    expand_cmd->add_flag("--include-unproven", include_unproven,
                         "append the unproven higher-order candidates");

    auto* rem_cmd = app.add_subcommand(
        "remainder", "R3/R4/R5 remainders; e.g. remainder --C 1 --G 3 --M 5 --Y 1.7 --t 1e-2");
    rem_opts.add_model_flags(rem_cmd);
    rem_opts.add_common_flags(rem_cmd);
    rem_cmd->add_option("--t", rem_opts.t, "time to maturity (years)");
    rem_cmd->add_option("--tmin", rem_opts.tmin, "sweep: smallest t");
    rem_cmd->add_option("--tmax", rem_opts.tmax, "sweep: largest t");
    rem_cmd->add_option("--points", rem_opts.points, "sweep: number of points");

    std::string kind = "a21";
    auto* table_cmd = app.add_subcommand(
        "table", "paper verification tables; e.g. table --kind a21 --out a21.csv");
    table_opts.add_model_flags(table_cmd);
    table_opts.add_common_flags(table_cmd);
    table_cmd->add_option("--kind", kind, "a21|a12|cubic|convergence");
    table_cmd->add_option("--tmin", table_opts.tmin, "override: smallest t");
    table_cmd->add_option("--tmax", table_opts.tmax, "override: largest t");
    table_cmd->add_option("--points", table_opts.points, "override: grid size");

    double mlo = 2.0, mhi = 8.0, glo = 1.0, ghi = 7.0;
    int msteps = 8, gsteps = 8;
    auto* heat_cmd = app.add_subcommand(
        "heatmap", "d2 integral vs closed form grid; e.g. heatmap --Y 1.5 --out fig1.csv");
    heat_opts.add_model_flags(heat_cmd);
    heat_opts.add_common_flags(heat_cmd);
    heat_cmd->add_option("--mlo", mlo, "smallest M (default 2)");
    heat_cmd->add_option("--mhi", mhi, "largest M (default 8)");
    heat_cmd->add_option("--msteps", msteps, "M grid size (default 8)");
    heat_cmd->add_option("--glo", glo, "smallest G (default 1)");
    heat_cmd->add_option("--ghi", ghi, "largest G (default 7)");
    heat_cmd->add_option("--gsteps", gsteps, "G grid size (default 8)");

    double ymin = 1.01, ymax = 1.99;
    int ypoints = 99, nmax = 1, jmax = 4;
    auto* lat_cmd = app.add_subcommand(
        "lattice", "exponent lattice and bifurcations; e.g. lattice --out fig2.csv");
    lat_opts.add_common_flags(lat_cmd);
    lat_cmd->add_option("--ymin", ymin, "grid start (default 1.01)");
    lat_cmd->add_option("--ymax", ymax, "grid end (default 1.99)");
    lat_cmd->add_option("--ypoints", ypoints, "grid size (default 99)");
    lat_cmd->add_option("--nmax", nmax, "max binomial order (default 1)");
    lat_cmd->add_option("--jmax", jmax, "max drift power (default 4)");

    auto* lap_cmd = app.add_subcommand(
        "check-laplace", "verify Laplace closed forms against quadrature; e.g. check-laplace");
    lap_opts.add_common_flags(lap_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
        return 1;
    }

    try {
        if (price_cmd->parsed()) return run_price(price_opts);
        if (coeffs_cmd->parsed()) return run_coeffs(coeffs_opts);
        if (expand_cmd->parsed()) return run_expand(expand_opts, include_unproven);
        if (rem_cmd->parsed()) return run_remainder(rem_opts);
        if (table_cmd->parsed()) return run_table(table_opts, kind);
        if (heat_cmd->parsed())
            return run_heatmap(heat_opts, mlo, mhi, msteps, glo, ghi, gsteps);
        if (lat_cmd->parsed()) return run_lattice(lat_opts, ymin, ymax, ypoints, nmax, jmax);
        if (lap_cmd->parsed()) return run_check_laplace(lap_opts);
    } catch (const cgmy::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (value=" << e.value()
                  << ", error_estimate=" << e.error_estimate()
                  << ", evaluations=" << e.evaluations() << ")\n";
        return 3;
    } catch (const cgmy::IntegrandError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
