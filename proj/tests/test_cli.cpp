// Runs the wicm executable end to end.

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "wicm_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " WICM_CLI_PATH " " + args + " > " + (workdir() / "stdout.txt").string() +
                            " 2> " + (workdir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string out(const std::string& name) { return (workdir() / name).string(); }

nlohmann::json report(const std::string& name) { return nlohmann::json::parse(slurp(workdir() / (name + ".json"))); }

std::vector<std::vector<std::string>> csv(const std::string& name) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(slurp(workdir() / (name + ".csv")));
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("tables") {
    REQUIRE(run("tables --out " + out("tables")) == 0);
    const auto rows = csv("tables");
    REQUIRE(rows.size() == 18);
    CHECK(rows[0] == std::vector<std::string>{"k", "phi_int_1", "phi_int_2", "phi_int_3", "phi_int_4"});
    CHECK(rows[17][1] == "1.000000000000000e+00");
    CHECK(std::stod(rows[1][4]) == doctest::Approx(-4.830484119726849e-13).epsilon(1e-9));
    const auto j = report("tables");
    CHECK(j["converged"] == true);
    CHECK(j["results"]["max_relative_deviation"].get<double>() <= 1e-9);
    CHECK(fs::exists(out("tables_diff.csv")));
}

TEST_CASE("solve") {
    REQUIRE(run("solve bratu --level 4 --param lambda=1 --out " + out("bratu")) == 0);
    auto j = report("bratu");
    CHECK(j["converged"] == true);
    CHECK(j["levels"][0]["metrics"].contains("error_at_half"));
    CHECK(csv("bratu")[0] == std::vector<std::string>{"x", "u_0", "u_1", "u_2"});

    REQUIRE(run("solve plate --level 4 --param Q=0 --out " + out("flat")) == 0);
    const auto rows = csv("flat");
    for (std::size_t r = 1; r < rows.size(); ++r)
        for (std::size_t c = 1; c < rows[r].size(); ++c) CHECK(std::stod(rows[r][c]) == 0.0);

    REQUIRE(run("solve geng --level 4 --out " + out("geng")) == 0);
    CHECK(report("geng")["levels"][0]["metrics"]["max_error"].get<double>() <= 1e-13);

    REQUIRE(run("solve bratu2d --level 4 --out " + out("b2")) == 0);
    CHECK(csv("b2")[0] == std::vector<std::string>{"x", "y", "u", "u_xx", "u_yy"});
    CHECK(csv("b2").size() == 17 * 17 + 1);
}

TEST_CASE("non-convergence still writes the report") {
    CHECK(run("solve bratu --level 4 --param lambda=3.6 --out " + out("fold")) == 2);
    const auto j = report("fold");
    CHECK(j["converged"] == false);
    CHECK_FALSE(j["note"].get<std::string>().empty());
}

TEST_CASE("convergence studies") {
    REQUIRE(run("convergence bratu --levels 4..6 --probe 0.5 --param lambda=1 --out " + out("conv")) == 0);
    CHECK(report("conv")["rate"].get<double>() >= 6.5);
    const auto rows = csv("conv");
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"j", "m", "error"});
    CHECK(std::stod(rows[1][1]) == 17.0);

    REQUIRE(run("convergence integral-sin --levels 4..7 --out " + out("sin")) == 0);
    const double rate = report("sin")["rate"].get<double>();
    CHECK(rate >= 6.5);
    CHECK(rate <= 8.5);

    // u = 0 is represented exactly, so every level sits on the floor.
    CHECK(run("convergence bratu --levels 4..6 --param lambda=0 --out " + out("floor")) == 3);
    CHECK(slurp(workdir() / "stderr.txt").find("machine-precision floor") != std::string::npos);
    CHECK(report("floor")["excluded_levels"].size() == 3);
}

TEST_CASE("condition diagnostics") {
    REQUIRE(run("condition --alpha 0.1,0.1,0.1,0.1,1 --levels 4..5 --out " + out("cond")) == 0);
    const auto rows = csv("cond");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"j", "condition", "inverse_norm"});
    CHECK(std::stod(rows[1][1]) >= 1.0);
    CHECK(run("condition --alpha 1,1,1,1,0 --levels 4..5") == 3);
    CHECK(run("condition --alpha 1,1,1 --levels 4..5") == 3);
}

TEST_CASE("argument and IO errors") {
    CHECK(run("solve nope") == 3);
    CHECK(run("solve bratu --level 3") == 3);
    CHECK(run("solve bratu --param lambda") == 3);
    CHECK(run("solve bratu --param nu=1") == 3);
    CHECK(run("convergence bratu --levels 6..4") == 3);
    CHECK(run("frobnicate") == 3);
    CHECK(run("solve bratu --level 4 --out /nonexistent-dir/x") == 4);
}

TEST_CASE("output is deterministic") {
    REQUIRE(run("convergence fivepoint --levels 4..6 --probe max --out " + out("d1"), "WICM_THREADS=1") == 0);
    REQUIRE(run("convergence fivepoint --levels 4..6 --probe max --out " + out("d2"), "WICM_THREADS=3") == 0);
    CHECK(slurp(out("d1.json")) == slurp(out("d2.json")));
    CHECK(slurp(out("d1.csv")) == slurp(out("d2.csv")));
    REQUIRE(run("--timing solve bratu --level 4 --out " + out("t")) == 0);
    CHECK(report("t")["levels"][0].contains("seconds"));
    REQUIRE(run("solve bratu --level 4 --out " + out("nt")) == 0);
    CHECK_FALSE(report("nt")["levels"][0].contains("seconds"));
}
