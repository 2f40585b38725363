#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// run the CLI binary, capturing stdout/stderr separately
RunResult run_cli(const std::string& args, const std::string& env = "") {
    const fs::path tmp = fs::temp_directory_path();
    static int counter = 0;
    const fs::path err_file = tmp / ("cgmy_cli_err_" + std::to_string(counter++));
    const std::string cmd =
        env + (env.empty() ? "" : " ") + std::string(CGMY_CLI_BIN) + " " + args +
        " 2>" + err_file.string();

    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
        result.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

    std::ifstream err_in(err_file);
    std::stringstream err_ss;
    err_ss << err_in.rdbuf();
    result.err = err_ss.str();
    fs::remove(err_file);
    return result;
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / name;
}

} // namespace

TEST_CASE("cli: coeffs emits the reference a12 value as JSON") {
    const auto r = run_cli("coeffs --C 1 --G 3 --M 5 --Y 1.7 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j["a12"].get<double>() - 24.437) < 5e-4 * 24.437);
    CHECK(j["C"] == 1.0);
    CHECK(j["Y"] == 1.7);
    CHECK(j.contains("tilde_b"));
    CHECK(j.contains("sigma_y"));
    CHECK(j["k_cap"] == 2);
}

TEST_CASE("cli: validation failures name the offending flag") {
    auto r = run_cli("price --C 1 --G 3 --M 5 --Y 1.5 --t 0");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("t must be positive") != std::string::npos);

    r = run_cli("coeffs --C -1 --G 3 --M 5 --Y 1.5");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("C must be positive") != std::string::npos);

    r = run_cli("coeffs --C 1 --G -2 --M 5 --Y 1.5");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("G must be non-negative") != std::string::npos);

    r = run_cli("coeffs --C 1 --G 3 --M 0.5 --Y 1.5");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("M must exceed 1") != std::string::npos);

    r = run_cli("coeffs --C 1 --G 3 --M 5 --Y 2.5");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("Y must lie in (1, 2)") != std::string::npos);
}

TEST_CASE("cli: unknown command prints usage to stderr and exits 1") {
    const auto r = run_cli("frobnicate");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("price") != std::string::npos);
    CHECK(r.err.find("table") != std::string::npos);
}

TEST_CASE("cli: price happy path") {
    const auto r = run_cli("price --C 1 --G 3 --M 5 --Y 1.7 --t 1e-3 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(std::abs(j[0]["price"].get<double>() - 0.023441622464340371) < 1e-9);
}

TEST_CASE("cli: table a21 reproduces the printed cell at (Y=1.2, t=1e-4)") {
    const fs::path out = temp_file("a21.csv");
    const auto r = run_cli("table --kind a21 --out " + out.string());
    REQUIRE(r.exit_code == 0);

    std::ifstream in(out);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "params,Y,t,numerator,reference,ratio,quad_error,within_gate");
    bool found = false;
    while (std::getline(in, line)) {
        if (line.rfind("C=1;G=3;M=5,1.2,1e-04,", 0) == 0) {
            found = true;
            std::stringstream ss(line);
            std::string field;
            for (int i = 0; i < 6; ++i) std::getline(ss, field, ',');
            CHECK(std::abs(std::stod(field) - 0.99903) < 5e-4);
            CHECK(line.find("true") != std::string::npos);
        }
    }
    CHECK(found);
    fs::remove(out);
}

TEST_CASE("cli: coeffs JSON round-trips through --config") {
    const fs::path cfg = temp_file("coeffs_roundtrip.json");
    const auto first = run_cli("coeffs --C 1 --G 3 --M 5 --Y 1.7 --format json --out " +
                               cfg.string());
    REQUIRE(first.exit_code == 0);
    const auto second = run_cli("coeffs --config " + cfg.string() + " --format json");
    REQUIRE(second.exit_code == 0);

    std::ifstream in(cfg);
    json a;
    in >> a;
    const json b = json::parse(second.out);
    for (auto& [key, value] : a.items()) {
        if (value.is_number()) {
            CHECK(b[key].get<double>() == value.get<double>());
        }
    }
    fs::remove(cfg);
}

TEST_CASE("cli: config path via environment variable") {
    const fs::path cfg = temp_file("env_config.txt");
    {
        std::ofstream out(cfg);
        out << "# model\nC = 1\nG = 3\nM = 5\nY = 1.7\n";
    }
    const auto r = run_cli("coeffs --format json",
                           "CGMY_ATM_CONFIG=" + cfg.string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j["a12"].get<double>() - 24.437) < 5e-4 * 24.437);
    fs::remove(cfg);
}

TEST_CASE("cli: sweep grid from config file") {
    const fs::path cfg = temp_file("sweep_config.txt");
    {
        std::ofstream out(cfg);
        out << "C=1\nG=3\nM=5\nY=1.7\ntmin=1e-4\ntmax=1e-2\npoints=3\n";
    }
    const auto r = run_cli("price --config " + cfg.string() + " --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.size() == 3);
    CHECK(j[0]["t"] == 1e-2);
    CHECK(j[2]["t"] == 1e-4);
    CHECK(j[0]["price"].get<double>() > j[2]["price"].get<double>());
    fs::remove(cfg);
}

TEST_CASE("cli: flags override config values") {
    const fs::path cfg = temp_file("override_config.txt");
    {
        std::ofstream out(cfg);
        out << "C=1\nG=3\nM=5\nY=1.2\n";
    }
    const auto r = run_cli("coeffs --config " + cfg.string() +
                           " --Y 1.7 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["Y"] == 1.7);
    fs::remove(cfg);
}

TEST_CASE("cli: expand reports terms, ties, and the evaluated sum") {
    const auto r = run_cli(
        "expand --C 1 --G 3 --M 5 --Y 1.5 --t 1e-4 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["k_cap"] == 2);
    CHECK(j["terms"].size() == 5);
    CHECK(j.contains("value"));
    bool tie = false;
    for (const auto& term : j["terms"]) tie = tie || term["tied"].get<bool>();
    CHECK(tie);
}

TEST_CASE("cli: expand notes the missing t^(3/Y) candidate for Y <= 3/2") {
    const auto r = run_cli(
        "expand --C 1 --G 3 --M 5 --Y 1.4 --include-unproven --format json");
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("Y > 3/2") != std::string::npos);
    const json j = json::parse(r.out);
    CHECK(j["terms"].size() == 6); // five proven + kappa-cross candidate
}

TEST_CASE("cli: remainder emits r3/r4/r5") {
    const auto r = run_cli(
        "remainder --C 1 --G 3 --M 5 --Y 1.7 --t 1e-2 --format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j[0]["r3"].get<double>() - 0.080175941334604864) < 1e-9);
    CHECK(j[0].contains("r4"));
    CHECK(j[0].contains("r5"));
}

TEST_CASE("cli: lattice output carries the bifurcation markers") {
    const auto r = run_cli("lattice --ypoints 5");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("marker,1.25") != std::string::npos);
    CHECK(r.out.find("marker,1.5") != std::string::npos);
    CHECK(r.out.find("drift_quartic") != std::string::npos);
}

TEST_CASE("cli: heatmap single cell") {
    const auto r = run_cli(
        "heatmap --Y 1.5 --mlo 5 --mhi 5 --msteps 1 --glo 3 --ghi 3 --gsteps 1 "
        "--format json");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["cells"].size() == 1);
    CHECK(std::abs(j["cells"][0]["diff"].get<double>()) < 5e-6);
}

TEST_CASE("cli: starved quadrature exits 2 on gated tables and 3 on price") {
    const auto table = run_cli("table --kind a21 --max-subdivisions 1");
    CHECK(table.exit_code == 2);
    const auto single = run_cli(
        "price --C 1 --G 3 --M 5 --Y 1.5 --t 1e-3 --max-subdivisions 1 "
        "--rel-tol 1e-15 --abs-tol 1e-30");
    CHECK(single.exit_code == 3);
    CHECK(single.err.find("converge") != std::string::npos);
}
