#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "ppvac/commands.hpp"

using namespace ppvac;
namespace fs = std::filesystem;

namespace {

std::string cfg_path(const char* name) { return std::string(PPVAC_SOURCE_DIR) + "/configs/" + name; }

fs::path scratch()
{
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("ppvac_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int cli(const std::string& args)
{
    const std::string cmd = std::string("\"") + PPVAC_CLI + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> csv_rows(const std::string& text)
{
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("exit codes")
{
    const auto out = scratch();
    CHECK(cli("signal --config " + cfg_path("desk_T_sweep.yaml") + " --output " + (out / "s.csv").string()) == 0);
    CHECK(cli("validate --config " + cfg_path("coarse_grid.yaml") + " --output " + (out / "v.json").string()) == 1);
    CHECK(cli("signal --config /nonexistent.yaml") == 2);
    CHECK(cli("signal --config " + cfg_path("proposal.yaml")) == 2);
    CHECK(cli("signal --format xml --config " + cfg_path("desk_T_sweep.yaml")) == 2);
    CHECK(cli("frobnicate") == 2);
    CHECK(cli("proposal-report") == 0);

    const fs::path bad = out / "bad.yaml";
    std::ofstream(bad) << "dimer:\n  omega_a: 2.45\n";
    CHECK(cli("signal --config " + bad.string()) == 2);
}

TEST_CASE("output is byte-identical across reruns and worker counts")
{
    const auto out = scratch();
    for (const char* cfg : {"crossed_ensemble.yaml", "collinear_n_mol.yaml"}) {
        const std::string sub = std::string(cfg) == "crossed_ensemble.yaml" ? "ensemble" : "signal";
        const auto a = out / ("a_" + std::string(cfg));
        const auto b = out / ("b_" + std::string(cfg));
        REQUIRE(cli(sub + " --workers 1 --config " + cfg_path(cfg) + " --output " + a.string()) == 0);
        REQUIRE(cli(sub + " --workers 4 --config " + cfg_path(cfg) + " --output " + b.string()) == 0);
        CHECK(slurp(a) == slurp(b));
        CHECK_FALSE(slurp(a).empty());
    }
}

TEST_CASE("seed flag changes the ensemble draw")
{
    const auto out = scratch();
    REQUIRE(cli("ensemble --seed 5 --config " + cfg_path("crossed_ensemble.yaml") + " --output " + (out / "s5.json").string()) == 0);
    REQUIRE(cli("ensemble --seed 6 --config " + cfg_path("crossed_ensemble.yaml") + " --output " + (out / "s6.json").string()) == 0);
    const auto j5 = nlohmann::json::parse(slurp(out / "s5.json"));
    const auto j6 = nlohmann::json::parse(slurp(out / "s6.json"));
    CHECK(j5.dump() != j6.dump());
}

TEST_CASE("collinear n_mol sweep: vacuum column is quadratic in n_mol")
{
    const auto out = scratch() / "nmol.csv";
    REQUIRE(cli("signal --config " + cfg_path("collinear_n_mol.yaml") + " --output " + out.string()) == 0);
    const auto rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 41);

    // Least-squares slope of log|vacuum| against log n_mol.
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& r : rows) {
        const double x = std::log(r[0]), y = std::log(std::abs(r[3]));
        sx += x, sy += y, sxx += x * x, sxy += x * y, syy += y * y;
    }
    const double n = static_cast<double>(rows.size());
    const double cov = sxy - sx * sy / n, vx = sxx - sx * sx / n, vy = syy - sy * sy / n;
    const double slope = cov / vx;
    const double r2 = cov * cov / (vx * vy);
    CHECK(slope == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(r2 > 0.9999);
    // Classical columns stay linear.
    for (const auto& r : rows) CHECK(r[1] / r[0] == doctest::Approx(rows[0][1] / rows[0][0]).epsilon(1e-9));
}

TEST_CASE("in-process validation and ensemble summaries")
{
    std::ostringstream out, err;
    CommandOptions opts;
    opts.config_path = cfg_path("desk_validate.yaml");
    CHECK(run_command("validate", opts, out, err) == kExitOk);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j.at("passed") == true);
    CHECK(j.at("records").size() == 2);

    const RunConfig cfg = load_config(cfg_path("crossed_ensemble.yaml"));
    const auto summary = run_ensemble(cfg, 1);
    CHECK(summary.seeds.size() == 200);
    CHECK_FALSE(summary.collinear);
    // Incoherent regime: <|X|^2> = N to within sampling error.
    CHECK(std::abs(summary.mean - 1000.0) < 4.0 * summary.standard_error + 1e-9);
    CHECK(summary.visibility.size() == 3);
}

TEST_CASE("signal CSV carries the config hash")
{
    std::ostringstream out, err;
    CommandOptions opts;
    opts.config_path = cfg_path("desk_T_sweep.yaml");
    REQUIRE(run_command("signal", opts, out, err) == kExitOk);
    const std::string text = out.str();
    CHECK(text.rfind("# ppvac signal\n# config_sha256: " + config_hash(load_config(cfg_path("desk_T_sweep.yaml"))), 0) == 0);
    CHECK(csv_rows(text).size() == 121);
}
