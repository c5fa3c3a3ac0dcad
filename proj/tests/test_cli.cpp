#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pihl/bounds.hpp"
#include "pihl/serialize.hpp"

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct CmdResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("pihl_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CmdResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_path = scratch_dir() / ("stdout_" + std::to_string(counter));
    const fs::path err_path = scratch_dir() / ("stderr_" + std::to_string(counter));
    ++counter;
    const std::string cmd = std::string(PIHL_CLI_PATH) + " " + args + " > " +
                            out_path.string() + " 2> " + err_path.string();
    const int raw = std::system(cmd.c_str());
    CmdResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = read_file(out_path);
    r.err = read_file(err_path);
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

} // namespace

TEST_CASE("bound subcommand reports the documented fields as json") {
    const CmdResult r = run_cli("bound --n 1000 --delta 1 --lambda-span 1");
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"bound_bandlimited", "bound1_raw", "bound2", "conventional_hl",
                            "pi_hl", "alpha", "L", "epsilon", "N", "delta"})
        CHECK(j.contains(key));
    const double expect = kPi * kPi / 1e6 * (1.0 - std::sqrt(8.0 * std::log(1000.0) / 1000.0));
    CHECK(rel_err(j.at("bound2").get<double>(), expect) < 1e-10);
    CHECK(rel_err(j.at("pi_hl").get<double>(), kPi / 1000.0) < 1e-12);
    CHECK(j.at("bound1_raw").is_number());

    const pihl::bounds::BoundReport lib =
        pihl::bounds::make_bound_report(1000, 1, {-0.5, 0.5}, 1.0);
    CHECK(rel_err(j.at("bound1_raw").get<double>(), lib.bound1_raw) < 1e-12);
    CHECK(rel_err(j.at("alpha").get<double>(), lib.alpha) < 1e-12);
}

TEST_CASE("bound subcommand warns but succeeds in the vacuous regime") {
    const CmdResult r = run_cli("bound --n 10 --delta 1 --lambda-span 1");
    CHECK(r.code == 0);
    CHECK(r.err.find("bound vacuous below N*delta = 26.09") != std::string::npos);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("bound1_raw").is_null());
    CHECK(j.at("bound2").get<double>() < 0.0);
}

TEST_CASE("bound subcommand rejects malformed invocations") {
    CHECK(run_cli("bound --n 5").code != 0);
    const CmdResult bad_delta = run_cli("bound --n 5 --delta -1 --lambda-span 1");
    CHECK(bad_delta.code != 0);
    CHECK(bad_delta.err.find("error:") != std::string::npos);
    CHECK(run_cli("").code != 0);
    CHECK(run_cli("frobnicate").code != 0);
}

TEST_CASE("bound subcommand emits csv on request") {
    const fs::path out = scratch_dir() / "bound.csv";
    const CmdResult r = run_cli("bound --n 100 --delta 1 --lambda-span 1 --format csv --out " +
                                out.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("wrote ") != std::string::npos);
    const auto rows = parse_csv(read_file(out));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "bound_bandlimited");
    CHECK(rows[0][9] == "delta");
    REQUIRE(rows[1].size() == 10);
    CHECK(rel_err(std::stod(rows[1][8]), 100.0) < 1e-12);

    // Round trip: every cell is a shortest %.12g rendering of its value.
    for (const auto& cell : rows[1]) {
        const double v = std::stod(cell);
        CHECK(pihl::io::format_number(v) == cell);
    }
}

TEST_CASE("prior subcommand samples densities with a summary block") {
    const CmdResult r = run_cli("prior kaiser --alpha 2 --bandwidth 8 --points 101");
    CHECK(r.code == 0);
    const auto blocks = r.out.find("\n\n");
    REQUIRE(blocks != std::string::npos);
    const auto density = parse_csv(r.out.substr(0, blocks));
    REQUIRE(density.size() == 102);
    CHECK(density[0][0] == "phi");
    for (std::size_t i = 1; i < density.size(); ++i)
        CHECK(std::stod(density[i][1]) >= 0.0);

    const auto summary = parse_csv(r.out.substr(blocks));
    REQUIRE(summary.size() == 2);
    CHECK(summary[0] == std::vector<std::string>{"total_mass", "tail_mass", "bandwidth_excess"});
    CHECK(std::abs(std::stod(summary[1][0]) - 1.0) < 1e-6);
    // Tail mass at this sharpness is ~1.9e-8, far under the analytic
    // envelope ~1.1e-6; the precise value is pinned in the density tests.
    CHECK(std::stod(summary[1][1]) > 0.0);
    CHECK(std::stod(summary[1][1]) < 1e-7);
    CHECK(std::stod(summary[1][2]) < 1e-6);
}

TEST_CASE("prior subcommand covers the flat and comb kinds") {
    const CmdResult flat = run_cli("prior rect --delta 0.5 --center 0.25 --points 51");
    CHECK(flat.code == 0);
    const auto rows = parse_csv(flat.out);
    bool saw_plateau = false;
    for (std::size_t i = 1; i + 2 < rows.size(); ++i) {
        if (rows[i].size() != 2)
            break;
        const double phi = std::stod(rows[i][0]);
        const double density = std::stod(rows[i][1]);
        if (std::abs(phi - 0.25) < 0.2) {
            CHECK(rel_err(density, 2.0) < 1e-12);
            saw_plateau = true;
        }
    }
    CHECK(saw_plateau);

    const CmdResult comb = run_cli("prior comb --delta 0.4 --weights=-1:1,0:2,1:1 --points 41");
    CHECK(comb.code == 0);
    CHECK(comb.out.find("total_mass") != std::string::npos);
}

TEST_CASE("degenerate smearing is rejected with a diagnostic") {
    const CmdResult r = run_cli("prior smeared --alpha 2 --bandwidth 16 --delta 1");
    CHECK(r.code != 0);
    CHECK(r.err.find("core width nonpositive") != std::string::npos);

    const CmdResult ok = run_cli("prior smeared --alpha 2 --bandwidth 64 --delta 1 --points 81");
    CHECK(ok.code == 0);
    const auto blocks = ok.out.find("\n\n");
    REQUIRE(blocks != std::string::npos);
    const auto summary = parse_csv(ok.out.substr(blocks));
    REQUIRE(summary.size() == 2);
    CHECK(std::abs(std::stod(summary[1][0]) - 1.0) < 1e-5);
}

TEST_CASE("frequency subcommand scales inversely with time") {
    const CmdResult r = run_cli("freq --time 2 --lambda-span 1");
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"delta_omega", "time", "lambda_span"});
    // CSV carries 12 significant digits, so text round-trip costs up to
    // 5e-12 relative.
    CHECK(rel_err(std::stod(rows[1][0]), kPi / 2.0) < 5e-12);

    const CmdResult j = run_cli("freq --time 0.5 --lambda-minus -1 --lambda-plus 1 --format json");
    CHECK(j.code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(rel_err(parsed.at("delta_omega").get<double>(), kPi) < 1e-12);

    CHECK(run_cli("freq --time 1 --lambda-span 0").code != 0);
    CHECK(run_cli("freq --lambda-span 1").code != 0);
}

TEST_CASE("figures subcommand writes the three datasets and their scripts") {
    const fs::path dir = scratch_dir() / "figs";
    fs::create_directories(dir);
    const CmdResult r = run_cli("figures --out " + dir.string());
    CHECK(r.code == 0);
    for (const char* name : {"fig_nalpha.csv", "fig_repsilon.csv", "fig_bound.csv",
                             "fig_nalpha.gp", "fig_repsilon.gp", "fig_bound.gp"})
        CHECK(fs::exists(dir / name));

    const auto repsilon = parse_csv(read_file(dir / "fig_repsilon.csv"));
    REQUIRE(repsilon.size() == 201);
    double max_ratio = 0.0;
    for (std::size_t i = 1; i < repsilon.size(); ++i) {
        max_ratio = std::max(max_ratio, std::stod(repsilon[i][1]));
        CHECK(std::stod(repsilon[i][2]) == 1.52661);
    }
    CHECK(max_ratio <= 1.52661);
    CHECK(max_ratio > 1.52);

    const auto nalpha = parse_csv(read_file(dir / "fig_nalpha.csv"));
    REQUIRE(nalpha.size() == 52);
    for (std::size_t i = 1; i < nalpha.size(); ++i) {
        const double asym = std::stod(nalpha[i][1]);
        const double series = std::stod(nalpha[i][2]);
        CHECK(asym > 0.0);
        CHECK(asym < 1.0);
        CHECK(series > 0.95);
        CHECK(series < 1.05);
    }

    const auto bound = parse_csv(read_file(dir / "fig_bound.csv"));
    REQUIRE(bound.size() == 51);
    const auto b1 = [&](std::size_t i) { return std::stod(bound[i][1]); };
    const auto b2 = [&](std::size_t i) { return std::stod(bound[i][2]); };
    CHECK(rel_err(std::stod(bound[1][0]), 30.0) < 1e-10);
    CHECK(rel_err(std::stod(bound[50][0]), 1e6) < 1e-10);
    CHECK(b1(1) >= b2(1));
    CHECK(b1(50) >= b2(50));
    CHECK(b2(50) > 0.98);
    // A mid-range deficit band is part of the measured behavior.
    int deficit_rows = 0;
    for (std::size_t i = 1; i <= 50; ++i) {
        CHECK(std::abs(b1(i)) <= 1.0);
        CHECK(b2(i) <= 1.0);
        if (b1(i) < b2(i))
            ++deficit_rows;
    }
    CHECK(deficit_rows > 0);
    CHECK(deficit_rows < 40);

    for (const char* name : {"fig_nalpha.gp", "fig_repsilon.gp", "fig_bound.gp"})
        CHECK(read_file(dir / name).find("set datafile separator ','") != std::string::npos);

    CHECK(run_cli("figures --out " + (dir / "missing_subdir").string()).code != 0);
}

TEST_CASE("scaling subcommand is deterministic and merges n sources") {
    const fs::path a = scratch_dir() / "scaling_a.csv";
    const fs::path b = scratch_dir() / "scaling_b.csv";
    const std::string args = "scaling --n 1 --n 10 --n-range 20:40:10 --out ";
    CHECK(run_cli(args + a.string()).code == 0);
    CHECK(run_cli(args + b.string()).code == 0);
    const std::string text = read_file(a);
    CHECK(text == read_file(b));

    const auto rows = parse_csv(text);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] ==
          std::vector<std::string>{"n", "mse", "rmse", "n_rmse", "bound2_delta1", "sandwich_ok"});
    CHECK(rows[1][0] == "1");
    CHECK(rows[1][4] == "nan");
    CHECK(rows[1][5] == "1");
    CHECK(rows[5][0] == "40");
    for (std::size_t i = 2; i < rows.size(); ++i)
        CHECK(rows[i][5] == "1");

    CHECK(run_cli("scaling").code != 0);
    CHECK(run_cli("scaling --n-range 5:1").code != 0);
}

TEST_CASE("well subcommand reports second-order convergence") {
    const CmdResult r = run_cli("well --width 1 --points 1000 --format json");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(rel_err(j.at("ground_energy").get<double>(), kPi * kPi) < 1e-5);
    CHECK(j.at("relative_error").get<double>() < 1e-5);
    const double order = j.at("convergence_order").get<double>();
    CHECK(order > 1.9);
    CHECK(order < 2.1);

    const CmdResult csv = run_cli("well --width 2 --points 500");
    CHECK(csv.code == 0);
    const auto rows = parse_csv(csv.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "ground_energy");
    CHECK(rel_err(std::stod(rows[1][1]), kPi * kPi / 4.0) < 1e-12);

    const fs::path profile = scratch_dir() / "well_profile.csv";
    const CmdResult p = run_cli("well --width 1 --points 400 --out " + profile.string());
    CHECK(p.code == 0);
    const auto prows = parse_csv(read_file(profile));
    REQUIRE(prows.size() == 401);
    CHECK(prows[0] == std::vector<std::string>{"x", "psi", "sine"});
    double sup = 0.0;
    for (std::size_t i = 1; i < prows.size(); ++i)
        sup = std::max(sup, std::abs(std::stod(prows[i][1]) - std::stod(prows[i][2])));
    CHECK(sup < 1e-4);

    CHECK(run_cli("well --width 1 --points 10").code != 0);
}

TEST_CASE("quadrature tolerance honours its environment override") {
    const std::string cmd = "PI_HL_QUAD_TOL=1e-6 " + std::string(PIHL_CLI_PATH) +
                            " prior kaiser --alpha 2 --bandwidth 8 --points 11";
    const fs::path out_path = scratch_dir() / "env_stdout";
    const int raw = std::system((cmd + " > " + out_path.string() + " 2>/dev/null").c_str());
    CHECK(WIFEXITED(raw));
    CHECK(WEXITSTATUS(raw) == 0);
    const std::string text = read_file(out_path);
    const auto blocks = text.find("\n\n");
    REQUIRE(blocks != std::string::npos);
    const auto summary = parse_csv(text.substr(blocks));
    CHECK(std::abs(std::stod(summary[1][0]) - 1.0) < 1e-4);
}
