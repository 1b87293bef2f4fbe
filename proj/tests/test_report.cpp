#include "wicm/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wicm;

namespace {

RunReport sample() {
    RunReport r;
    r.command = "solve";
    r.problem = "bratu";
    r.parameters = {{"lambda", 1.0}, {"alpha", 0.5}};
    LevelRecord rec;
    rec.level = 4;
    rec.points = 17;
    rec.iterations = 3;
    rec.residual = 2e-15;
    rec.metrics = {{"max_error", 3.6e-11}, {"bad", NAN}};
    r.levels.push_back(rec);
    r.rate = 7.25;
    r.excluded_levels = {6};
    r.note = "a \"quoted\" note\n";
    return r;
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(1.0) == "1.000000000000000e+00");
    CHECK(format_number(-4.830484119726849e-13) == "-4.830484119726849e-13");
    CHECK(format_number(NAN) == "nan");
    CHECK(format_number(INFINITY) == "inf");
}

TEST_CASE("JSON report is valid, ordered and deterministic") {
    const std::string text = sample().to_json();
    CHECK(text == sample().to_json());
    const auto j = nlohmann::ordered_json::parse(text);
    CHECK(j["schema"] == "wicm-report/1");
    CHECK(j["problem"] == "bratu");
    CHECK(j["note"] == "a \"quoted\" note\n");
    // Insertion order survives.
    auto it = j["parameters"].begin();
    CHECK(it.key() == "lambda");
    ++it;
    CHECK(it.key() == "alpha");
    CHECK(j["levels"][0]["metrics"]["max_error"].get<double>() == 3.6e-11);
    CHECK(j["levels"][0]["metrics"]["bad"].is_null());
    CHECK(j["levels"][0].contains("seconds") == false);
    CHECK(j["rate"].get<double>() == 7.25);
    CHECK(j["excluded_levels"][0] == 6);
    CHECK(text.find("7.250000000000000e+00") != std::string::npos);

    RunReport none = sample();
    none.rate.reset();
    none.levels[0].seconds = 0.5;
    const auto k = nlohmann::json::parse(none.to_json());
    CHECK(k["rate"].is_null());
    CHECK(k["levels"][0]["seconds"].get<double>() == 0.5);
}

TEST_CASE("CSV output") {
    const auto dir = std::filesystem::temp_directory_path() / "wicm_report_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "t.csv").string();
    REQUIRE(write_csv(path, {"j", "error"}, {{4.0, 1e-3}, {5.0, 2.5e-6}}));
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "j,error\n4.000000000000000e+00,1.000000000000000e-03\n5.000000000000000e+00,2.500000000000000e-06\n");
    CHECK_FALSE(write_csv("/nonexistent-dir/x.csv", {"a"}, {}));
    CHECK_FALSE(write_text("/nonexistent-dir/x.json", "{}"));
    std::filesystem::remove_all(dir);
}
