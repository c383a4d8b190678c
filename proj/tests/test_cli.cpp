#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ubgd/trace_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(UBGD_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof(buf), pipe)) result.output.append(buf, n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("ubgd_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_config(const std::string& name, const json& j) {
    const fs::path p = temp_dir() / name;
    std::ofstream out(p);
    out << j.dump(2);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json base_quadratic_config(const std::string& out_name) {
    return json{{"objective", "quadratic-1d"}, {"x0", {2.0}},          {"scheme", "backtracking"},
                {"alpha", 0.5},                {"beta", 0.5},          {"delta0", 1.0},
                {"output", (temp_dir() / out_name).string()}};
}

}  // namespace

TEST_CASE("run: quadratic backtracking writes one data row and exits 0") {
    const json cfg = base_quadratic_config("quad.csv");
    const auto res = run_cli("run " + write_config("quad.json", cfg).string());
    CHECK(res.exit_code == 0);

    const std::string csv = slurp(temp_dir() / "quad.csv");
    const auto rows = ubgd::parse_trace_csv_string(csv);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].delta == 1.0);
    CHECK(rows[0].mode == ubgd::StepMode::Backtrack);

    const json audit = json::parse(slurp(temp_dir() / "quad.audit.json"));
    CHECK(audit.at("termination") == "critical_point");
    CHECK(audit.at("scheme") == "backtracking");
    CHECK(audit.at("objective") == "quadratic-1d");
    CHECK(audit.at("audit").at("armijo_ok") == true);
    CHECK(audit.at("final_x") == json::array({0.0}));
}

TEST_CASE("run: repeated invocations are byte-identical") {
    json cfg = base_quadratic_config("det.csv");
    cfg["objective"] = "quartic-1d";
    cfg["x0"] = {1.0};
    cfg["scheme"] = "unbounded";
    cfg["max_iters"] = 60;
    const fs::path cfg_path = write_config("det.json", cfg);

    CHECK(run_cli("run " + cfg_path.string()).exit_code == 0);
    const std::string first = slurp(temp_dir() / "det.csv");
    const std::string first_audit = slurp(temp_dir() / "det.audit.json");
    CHECK(run_cli("run " + cfg_path.string()).exit_code == 0);
    CHECK(slurp(temp_dir() / "det.csv") == first);
    CHECK(slurp(temp_dir() / "det.audit.json") == first_audit);
    CHECK(first.find("growth") != std::string::npos);  // the flat region engaged growth steps

    // Re-parsed rows satisfy the step-record invariants.
    const ubgd::LineSearchParams params;
    const auto rows = ubgd::parse_trace_csv_string(first);
    REQUIRE(rows.size() == 60);
    for (const auto& row : rows) {
        CHECK(row.step_norm == doctest::Approx(row.delta * row.grad_norm).epsilon(1e-12));
        CHECK(row.delta == doctest::Approx(ubgd::delta_for_exponent(row.delta_exponent, params)).epsilon(1e-12));
    }
}

TEST_CASE("run: diverging objective exits 2") {
    json cfg = base_quadratic_config("lin.csv");
    cfg["objective"] = "linear";
    cfg["x0"] = {0.0};
    cfg["divergence_x_threshold"] = 100.0;
    const auto res = run_cli("run " + write_config("lin.json", cfg).string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("diverging") != std::string::npos);
}

TEST_CASE("run: numerical failure exits 3") {
    json cfg = base_quadratic_config("nf.csv");
    cfg["objective"] = "quartic-1d";
    cfg["x0"] = {1e80};  // f(x0) overflows immediately
    const auto res = run_cli("run " + write_config("nf.json", cfg).string());
    CHECK(res.exit_code == 3);
    CHECK(res.output.find("numerical_failure") != std::string::npos);
}

TEST_CASE("run: config errors exit 64 and name the offending key") {
    SUBCASE("unknown objective") {
        json cfg = base_quadratic_config("bad.csv");
        cfg["objective"] = "nonexistent";
        const auto res = run_cli("run " + write_config("bad1.json", cfg).string());
        CHECK(res.exit_code == 64);
        CHECK(res.output.find("objective") != std::string::npos);
        CHECK(res.output.find("nonexistent") != std::string::npos);
    }
    SUBCASE("unknown key") {
        json cfg = base_quadratic_config("bad.csv");
        cfg["lerning_rate"] = 0.1;
        const auto res = run_cli("run " + write_config("bad2.json", cfg).string());
        CHECK(res.exit_code == 64);
        CHECK(res.output.find("lerning_rate") != std::string::npos);
    }
    SUBCASE("x0 dimension mismatch") {
        json cfg = base_quadratic_config("bad.csv");
        cfg["x0"] = {1.0, 2.0};
        const auto res = run_cli("run " + write_config("bad3.json", cfg).string());
        CHECK(res.exit_code == 64);
        CHECK(res.output.find("x0") != std::string::npos);
    }
    SUBCASE("missing output") {
        json cfg = base_quadratic_config("bad.csv");
        cfg.erase("output");
        const auto res = run_cli("run " + write_config("bad4.json", cfg).string());
        CHECK(res.exit_code == 64);
        CHECK(res.output.find("output") != std::string::npos);
    }
    SUBCASE("hybrid without N") {
        json cfg = base_quadratic_config("bad.csv");
        cfg["scheme"] = "hybrid";
        const auto res = run_cli("run " + write_config("bad5.json", cfg).string());
        CHECK(res.exit_code == 64);
        CHECK(res.output.find("'N'") != std::string::npos);
    }
    SUBCASE("unreadable config file") {
        const auto res = run_cli("run " + (temp_dir() / "missing.json").string());
        CHECK(res.exit_code == 64);
    }
    SUBCASE("alpha out of range") {
        json cfg = base_quadratic_config("bad.csv");
        cfg["alpha"] = 1.5;
        const auto res = run_cli("run " + write_config("bad6.json", cfg).string());
        CHECK(res.exit_code == 64);
        CHECK(res.output.find("alpha") != std::string::npos);
    }
}

TEST_CASE("run: hybrid and standard schemes configured through the config file") {
    json cfg = base_quadratic_config("hy.csv");
    cfg["scheme"] = "hybrid";
    cfg["N"] = 5;
    CHECK(run_cli("run " + write_config("hy.json", cfg).string()).exit_code == 0);
    const auto rows = ubgd::parse_trace_csv_string(slurp(temp_dir() / "hy.csv"));
    REQUIRE(rows.size() == 1);  // quadratic still converges in one step

    json std_cfg = base_quadratic_config("std.csv");
    std_cfg["scheme"] = "standard";
    std_cfg["fixed_delta"] = 0.1;
    CHECK(run_cli("run " + write_config("std.json", std_cfg).string()).exit_code == 0);
    const auto std_rows = ubgd::parse_trace_csv_string(slurp(temp_dir() / "std.csv"));
    CHECK(std_rows.size() == 226);  // x_n = 2 * 0.9^n crosses grad_tol at n = 226
    CHECK(std_rows[0].mode == ubgd::StepMode::Standard);
}

TEST_CASE("run: seeds sample starts in the test box, one output per seed") {
    json cfg = base_quadratic_config("seeded.csv");
    cfg.erase("x0");
    cfg["objective"] = "rosenbrock";
    cfg["seeds"] = {1, 2};
    cfg["max_iters"] = 50;
    const auto res = run_cli("run " + write_config("seeded.json", cfg).string());
    CHECK(res.exit_code == 0);
    CHECK(fs::exists(temp_dir() / "seeded_seed1.csv"));
    CHECK(fs::exists(temp_dir() / "seeded_seed2.csv"));
    CHECK(fs::exists(temp_dir() / "seeded_seed1.audit.json"));
    CHECK(slurp(temp_dir() / "seeded_seed1.csv") != slurp(temp_dir() / "seeded_seed2.csv"));
}

TEST_CASE("UBGD_MAX_ITERS env var overrides the config") {
    json cfg = base_quadratic_config("env.csv");
    cfg["objective"] = "quartic-1d";
    cfg["x0"] = {1.0};
    cfg["max_iters"] = 100;
    const fs::path cfg_path = write_config("env.json", cfg);

    setenv("UBGD_MAX_ITERS", "5", 1);
    auto res = run_cli("run " + cfg_path.string());
    unsetenv("UBGD_MAX_ITERS");
    CHECK(res.exit_code == 0);  // MaxIters still exits 0
    CHECK(ubgd::parse_trace_csv_string(slurp(temp_dir() / "env.csv")).size() == 5);

    setenv("UBGD_MAX_ITERS", "not-a-number", 1);
    res = run_cli("run " + cfg_path.string());
    unsetenv("UBGD_MAX_ITERS");
    CHECK(res.exit_code == 64);
    CHECK(res.output.find("UBGD_MAX_ITERS") != std::string::npos);
}

TEST_CASE("compare: quartic flat region favors the unbounded scheme") {
    json cfg{{"objective", "quartic-1d"},
             {"x0", {1.0}},
             {"max_iters", 3000},
             {"target", {{"kind", "norm_below"}, {"value", 1e-3}}},
             {"output", (temp_dir() / "cmp.csv").string()}};
    const auto res = run_cli("compare " + write_config("cmp.json", cfg).string() + " backtracking unbounded");
    CHECK(res.exit_code == 0);

    std::istringstream table(slurp(temp_dir() / "cmp.csv"));
    std::string header;
    std::getline(table, header);
    CHECK(header == "scheme,iters_to_target,value_evals,grad_evals,termination");
    std::string bt_row;
    std::string ub_row;
    std::getline(table, bt_row);
    std::getline(table, ub_row);
    CHECK(bt_row.rfind("backtracking,inf,", 0) == 0);  // not reached within 3000 bounded steps
    CHECK(ub_row.rfind("unbounded,85,", 0) == 0);      // frozen measurement
}

TEST_CASE("compare: quadratic ties across Armijo schemes") {
    json cfg{{"objective", "quadratic-1d"},
             {"x0", {2.0}},
             {"N", 5},
             {"target", {{"kind", "norm_below"}, {"value", 1e-8}}},
             {"output", (temp_dir() / "cmp_quad.csv").string()}};
    const auto res =
        run_cli("compare " + write_config("cmp_quad.json", cfg).string() + " backtracking twoway hybrid");
    CHECK(res.exit_code == 0);
    std::istringstream table(slurp(temp_dir() / "cmp_quad.csv"));
    std::string line;
    std::getline(table, line);  // header
    while (std::getline(table, line)) {
        CHECK(line.find(",1,") != std::string::npos);  // one iteration to target for every scheme
    }
}

TEST_CASE("compare: scheme-spec arguments with colon parameters") {
    json cfg{{"objective", "quadratic-1d"},
             {"x0", {2.0}},
             {"target", {{"kind", "norm_below"}, {"value", 1e-8}}},
             {"output", (temp_dir() / "cmp_colon.csv").string()}};
    const auto res = run_cli("compare " + write_config("cmp_colon.json", cfg).string() +
                             " hybrid:3 standard:0.5 backtracking");
    CHECK(res.exit_code == 0);
    const std::string table = slurp(temp_dir() / "cmp_colon.csv");
    CHECK(table.find("hybrid:3,") != std::string::npos);
    CHECK(table.find("standard:0.5,") != std::string::npos);
}

TEST_CASE("compare: fewer than two schemes exits 64") {
    json cfg{{"objective", "quadratic-1d"},
             {"x0", {2.0}},
             {"target", {{"kind", "norm_below"}, {"value", 1e-8}}},
             {"output", (temp_dir() / "nope.csv").string()}};
    const auto res = run_cli("compare " + write_config("cmp_one.json", cfg).string() + " backtracking");
    CHECK(res.exit_code == 64);
}

TEST_CASE("compare: missing target exits 64 naming the key") {
    json cfg{{"objective", "quadratic-1d"}, {"x0", {2.0}}, {"output", (temp_dir() / "nope.csv").string()}};
    const auto res =
        run_cli("compare " + write_config("cmp_notarget.json", cfg).string() + " backtracking unbounded");
    CHECK(res.exit_code == 64);
    CHECK(res.output.find("target") != std::string::npos);
}

TEST_CASE("check: single entry and full corpus pass") {
    auto res = run_cli("check quadratic-1d");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("quadratic-1d") != std::string::npos);
    CHECK(res.output.find("PASS") != std::string::npos);

    res = run_cli("check all");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("rosenbrock") != std::string::npos);
    CHECK(res.output.find("FAIL") == std::string::npos);

    res = run_cli("check no-such-thing");
    CHECK(res.exit_code == 64);
}

TEST_CASE("list: prints every corpus entry") {
    const auto res = run_cli("list");
    CHECK(res.exit_code == 0);
    for (const char* name : {"quadratic-1d", "quartic-1d", "rosenbrock", "saddle", "linear",
                             "double-well", "cubic"}) {
        CAPTURE(name);
        CHECK(res.output.find(name) != std::string::npos);
    }
}

TEST_CASE("bad subcommand usage exits 64") {
    CHECK(run_cli("frobnicate").exit_code == 64);
    CHECK(run_cli("run").exit_code == 64);  // missing config positional
}
