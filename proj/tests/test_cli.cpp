#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbsim/run_config.hpp"

namespace fs = std::filesystem;

TEST_SUITE_BEGIN("cli");

namespace {

std::string qbsim_bin() {
    const char* env = std::getenv("QBSIM_BIN");
    REQUIRE_MESSAGE(env != nullptr, "QBSIM_BIN must point at the qbsim binary");
    return env;
}

fs::path work_dir() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / "qbsim_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = "\"" + qbsim_bin() + "\" " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Csv {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv out;
    std::istringstream in(text);
    std::string line;
    bool header_done = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (line.back() == ',') fields.push_back("");
        if (!header_done) {
            out.columns = fields;
            header_done = true;
        } else {
            out.rows.push_back(fields);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("evolve meanfield: schema, first-row energy, determinism") {
    const auto f1 = work_dir() / "mf1.csv";
    const auto f2 = work_dir() / "mf2.csv";
    const std::string args =
        "meanfield --g 1 --omega 2 --setup 2 --t-max 5 --samples 11 --out ";
    REQUIRE(run_cli(args + f1.string()) == 0);
    REQUIRE(run_cli(args + f2.string()) == 0);
    CHECK(slurp(f1) == slurp(f2));  // byte-identical reruns

    const auto csv = parse_csv(slurp(f1));
    const std::vector<std::string> expect{"t",  "energy", "ergotropy",    "mx",
                                          "my", "mz",     "trace_defect", "min_eig"};
    CHECK(csv.columns == expect);
    REQUIRE(csv.rows.size() == 11);
    CHECK(std::stod(csv.rows[0][0]) == 0.0);
    CHECK(std::stod(csv.rows[0][1]) == 0.0);  // ground start holds no energy
}

TEST_CASE("evolve single: schema without magnetization columns") {
    const auto f = work_dir() / "single.csv";
    REQUIRE(run_cli("evolve --model single --setup 2 --g -2 --omega 0.5 --t-max 4 "
                    "--samples 9 --out " +
                    f.string()) == 0);
    const auto csv = parse_csv(slurp(f));
    const std::vector<std::string> expect{"t", "energy", "ergotropy", "trace_defect",
                                          "min_eig"};
    CHECK(csv.columns == expect);
    REQUIRE(csv.rows.size() == 9);
    // Positivity and trace quality are reported per sample.
    for (const auto& row : csv.rows) {
        CHECK(std::stod(row[3]) < 1e-8);
        CHECK(std::stod(row[4]) > -1e-8);
    }
}

TEST_CASE("steady sweep: deterministic rows, parallel equals serial, g=-1 line") {
    const auto serial = work_dir() / "steady_serial.csv";
    const auto parallel = work_dir() / "steady_par.csv";
    const std::string base =
        "steady --model single --setup 1 --omega 0.5 "
        "--sweep g:-2:0:5 --sweep omega:0.1:1.1:3 --out ";
    REQUIRE(run_cli(base + serial.string() + " --jobs 1") == 0);
    REQUIRE(run_cli(base + parallel.string() + " --jobs 4") == 0);
    CHECK(slurp(serial) == slurp(parallel));

    const auto csv = parse_csv(slurp(serial));
    const std::vector<std::string> expect{"g",         "omega",      "energy",
                                          "ergotropy", "degeneracy", "cp_flag"};
    CHECK(csv.columns == expect);
    REQUIRE(csv.rows.size() == 15);
    for (const auto& row : csv.rows) {
        if (std::stod(row[0]) == -1.0) {
            CHECK(std::stod(row[2]) == doctest::Approx(0.5).epsilon(1e-8));
            CHECK(std::abs(std::stod(row[3])) < 1e-10);
        }
        CHECK(std::stoll(row[4]) == 1);
        CHECK(std::stoll(row[5]) == 1);
    }
}

TEST_CASE("spectrum: schema, zero mode, and the size budget exit code") {
    const auto f = work_dir() / "spec.csv";
    REQUIRE(run_cli("spectrum --n-atoms 8 --g 1 --omega 1 --setup 2 --out " + f.string()) ==
            0);
    const auto csv = parse_csv(slurp(f));
    CHECK(csv.columns == std::vector<std::string>{"re_lambda", "im_lambda"});
    REQUIRE(csv.rows.size() == 81);
    int zero_modes = 0;
    double prev = 1e300;
    for (const auto& row : csv.rows) {
        const double re = std::stod(row[0]);
        const double im = std::stod(row[1]);
        CHECK(re <= prev + 1e-15);  // sorted by descending real part
        prev = re;
        if (std::hypot(re, im) <= 1e-8) ++zero_modes;
    }
    CHECK(zero_modes == 1);

    CHECK(run_cli("spectrum --n-atoms 50 --g 1 --omega 1 --out /dev/null") == 4);
}

TEST_CASE("phase-diagram: three regions, boundary series, degenerate flag") {
    const auto f = work_dir() / "phase.csv";
    REQUIRE(run_cli("phase-diagram --setup 2 --sweep omega:0:3:7 --sweep g:-1:0:3 --out " +
                    f.string()) == 0);
    const auto csv = parse_csv(slurp(f));
    CHECK(csv.columns ==
          std::vector<std::string>{"omega", "g", "phase", "omega_cri", "e_ss"});
    REQUIRE(csv.rows.size() == 7 * 3 + 3);  // grid plus one boundary row per g

    int btc = 0, stat_b = 0, stat_c = 0, boundary = 0, degenerate = 0;
    for (const auto& row : csv.rows) {
        const auto& phase = row[2];
        if (phase == "boundary") {
            ++boundary;
            CHECK(row[0] == row[3]);  // boundary rows sit at omega = omega_cri
            continue;
        }
        if (phase.find("BTC_A") == 0) ++btc;
        if (phase == "stationary_B") ++stat_b;
        if (phase == "stationary_C") ++stat_c;
        if (phase.find("_degenerate") != std::string::npos) {
            ++degenerate;
            CHECK(std::stod(row[1]) == -0.5);
        }
        if (phase == "BTC_A") CHECK(row[4].empty());  // no closed-form energy in the BTC phase
    }
    CHECK(boundary == 3);
    CHECK(btc > 0);
    CHECK(stat_b > 0);
    CHECK(stat_c > 0);
    CHECK(degenerate > 0);
}

TEST_CASE("steady landscape: strong negative feedback at weak drive charges highest") {
    const auto f = work_dir() / "landscape.csv";
    REQUIRE(run_cli("steady --model single --setup 2 "
                    "--sweep omega:0.05:2:5 --sweep g:-3:1:5 --out " +
                    f.string()) == 0);
    const auto csv = parse_csv(slurp(f));
    REQUIRE(csv.rows.size() == 25);
    double best = -1.0, best_omega = 0.0, best_g = 0.0;
    for (const auto& row : csv.rows) {
        const double e = std::stod(row[2]);
        if (e > best) {
            best = e;
            best_omega = std::stod(row[0]);
            best_g = std::stod(row[1]);
        }
    }
    CHECK(best_omega == 0.05);
    CHECK(best_g == -2.0);
    CHECK(best > 0.99);
}

TEST_CASE("json format mirrors the csv schema") {
    const auto fc = work_dir() / "mirror.csv";
    const auto fj = work_dir() / "mirror.json";
    const std::string base = "steady --model single --g -1 --omega 0.5 --out ";
    REQUIRE(run_cli(base + fc.string() + " --format csv") == 0);
    REQUIRE(run_cli(base + fj.string() + " --format json") == 0);

    const auto csv = parse_csv(slurp(fc));
    const auto j = nlohmann::json::parse(slurp(fj));
    CHECK(j["command"] == "steady");
    CHECK(j["columns"].get<std::vector<std::string>>() == csv.columns);
    REQUIRE(j["rows"].size() == csv.rows.size());
    CHECK(j["rows"][0][0].get<double>() ==
          doctest::Approx(std::stod(csv.rows[0][0])).epsilon(1e-15));
    CHECK(j["config"].contains("model"));
}

TEST_CASE("config file drives a run and flags override it") {
    const auto cfg = work_dir() / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "[evolve]\n"
            << "model=single\n"
            << "setup=2\n"
            << "g=-2\n"
            << "omega=0.5\n"
            << "t-max=2\n"
            << "samples=5\n";
    }
    const auto f1 = work_dir() / "cfg1.csv";
    const auto f2 = work_dir() / "cfg2.csv";
    REQUIRE(run_cli("evolve --config " + cfg.string() + " --out " + f1.string()) == 0);
    const auto csv1 = parse_csv(slurp(f1));
    REQUIRE(csv1.rows.size() == 5);

    // --samples on the command line beats the file value.
    REQUIRE(run_cli("evolve --config " + cfg.string() + " --samples 7 --out " +
                    f2.string()) == 0);
    CHECK(parse_csv(slurp(f2)).rows.size() == 7);
}

TEST_CASE("config errors exit with code 2") {
    CHECK(run_cli("evolve --model nosuch --out /dev/null") == 2);
    CHECK(run_cli("steady --model meanfield --out /dev/null") == 2);
    CHECK(run_cli("evolve --samples 1 --out /dev/null") == 2);
    CHECK(run_cli("spectrum --model single --out /dev/null") == 2);
    CHECK(run_cli("evolve --sweep bogus --out /dev/null") == 2);
    CHECK(run_cli("") == 2);  // a subcommand is required
}

TEST_CASE("sweep axes: parsing, spacing, and the parallel executor") {
    using qbsim::cli::parse_axis;
    const auto lin = parse_axis("omega:0:3:7");
    CHECK(lin.field == "omega");
    CHECK(lin.steps == 7);
    const auto vals = qbsim::sweep::axis_values(lin);
    REQUIRE(vals.size() == 7);
    CHECK(vals.front() == 0.0);
    CHECK(vals.back() == 3.0);

    const auto log = parse_axis("omega:0.01:1:3:log");
    const auto lv = qbsim::sweep::axis_values(log);
    CHECK(lv[1] == doctest::Approx(0.1).epsilon(1e-12));

    CHECK_THROWS_AS(parse_axis("omega:0:3"), qbsim::ValidationError);
    CHECK_THROWS_AS(parse_axis("omega:a:b:4"), qbsim::ValidationError);
    CHECK_THROWS_AS(qbsim::sweep::axis_values({"g", -1.0, 1.0, 4, true}),
                    qbsim::ValidationError);

    // Index-ordered results regardless of worker count; exceptions propagate.
    auto square = [](int i) { return i * i; };
    const auto serial = qbsim::sweep::run_indexed<int>(50, square, 1);
    const auto parallel = qbsim::sweep::run_indexed<int>(50, square, 4);
    CHECK(serial == parallel);
    auto thrower = [](int i) -> int {
        if (i == 17) throw qbsim::ValidationError("boom");
        return i;
    };
    CHECK_THROWS_AS(qbsim::sweep::run_indexed<int>(50, thrower, 4), qbsim::ValidationError);
}

TEST_SUITE_END();
