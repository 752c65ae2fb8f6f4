#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <set>

#include "cues/rng.hpp"
#include "cues/run_log.hpp"

using namespace cues;

namespace {

RunLog random_log(std::uint64_t seed, int rows) {
    SeededRng rng(seed, RngStream::Test);
    RunLog log;
    for (int i = 0; i < rows; ++i) {
        StateRecord r;
        r.t = 0.01 * i;
        r.phase = kAllPhases[static_cast<std::size_t>(rng.uniform() * kAllPhases.size())];
        for (auto& v : r.values) v = rng.gaussian(std::pow(10.0, rng.gaussian(4.0)));
        log.states.push_back(r);
    }
    log.states.front()[Col::TuvX] = std::numeric_limits<double>::quiet_NaN();
    log.states.front()[Col::TuvY] = std::numeric_limits<double>::infinity();
    log.states.front()[Col::TuvZ] = -0.0;
    log.states.front()[Col::TuvVx] = std::numeric_limits<double>::denorm_min();
    log.events = {{1.5, "detection", {{"object", "knife-1"}, {"vehicle", "TUV"}}},
                  {2.0, "phase", {{"from", "A"}, {"to", "B"}}}};
    log.metrics = {{"seed", seed}, {"coverage_vehicle", "tuv"}, {"coverage_swath", 10.0}};
    return log;
}

}  // namespace

TEST_CASE("column dictionary") {
    const auto& names = numeric_column_names();
    CHECK(names.size() == kNumericColumns);
    CHECK(names[static_cast<std::size_t>(Col::AsvX)] == "asv_x");
    CHECK(names[static_cast<std::size_t>(Col::LegAngles)] == "leg0_coxa");
    CHECK(names[static_cast<std::size_t>(Col::LegAngles) + 17] == "leg5_femur");
    CHECK(names.back() == "wind_speed");
    std::set<std::string> unique(names.begin(), names.end());
    CHECK(unique.size() == names.size());
}

TEST_CASE("csv and jsonl round-trip bit for bit") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const RunLog log = random_log(seed, 200);
        RunLog back;
        back.states = states_from_csv(states_to_csv(log.states));
        back.events = events_from_jsonl(events_to_jsonl(log.events));
        back.metrics = log.metrics;
        CHECK(same_log(log, back));
        CHECK(std::signbit(back.states.front()[Col::TuvZ]));
    }
}

TEST_CASE("same_log sees single-bit differences") {
    const RunLog a = random_log(5, 10);
    RunLog b = a;
    CHECK(same_log(a, b));
    b.states[3][Col::EstPsi] = std::nextafter(b.states[3][Col::EstPsi], 1e300);
    CHECK_FALSE(same_log(a, b));
    b = a;
    b.events[0].data["object"] = "boot";
    CHECK_FALSE(same_log(a, b));
    b = a;
    b.states.pop_back();
    CHECK_FALSE(same_log(a, b));
}

TEST_CASE("header only and malformed csv") {
    const auto empty = states_to_csv({});
    CHECK(empty.rfind("t,phase,asv_x,", 0) == 0);
    CHECK(std::count(empty.begin(), empty.end(), '\n') == 1);
    CHECK(states_from_csv(empty).empty());
    CHECK_THROWS_AS(states_from_csv(""), IoError);
    CHECK_THROWS_AS(states_from_csv("t,phase\n0,PreMission\n"), IoError);
    auto text = states_to_csv(random_log(1, 2).states);
    text.replace(text.find("\n") + 1, 1, "x");
    CHECK_THROWS_AS(states_from_csv(text), IoError);
    CHECK_THROWS_AS(events_from_jsonl("{\"t\": 1}\n"), IoError);
}

TEST_CASE("emit and read back a run directory") {
    const auto dir = std::filesystem::temp_directory_path() / "cues_run_log_test";
    std::filesystem::remove_all(dir);
    const RunLog log = random_log(9, 50);
    emit_outputs(log, dir, {OutputFormat::Csv, OutputFormat::Json});
    for (const char* f : {"states.csv", "events.jsonl", "metrics.json", "report.txt"}) {
        CHECK(std::filesystem::exists(dir / f));
    }
    CHECK(same_log(log, read_run_dir(dir)));

    std::filesystem::remove_all(dir);
    emit_outputs(log, dir, {OutputFormat::Json});
    CHECK_FALSE(std::filesystem::exists(dir / "states.csv"));
    CHECK(read_run_dir(dir).states.empty());
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    CHECK_THROWS_AS(read_run_dir(dir), IoError);
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(read_run_dir(dir), IoError);
}

TEST_CASE("coverage from a logged hexapod track") {
    RunLog log;
    for (int i = 0; i <= 3600; ++i) {
        StateRecord r;
        r.t = i;
        r[Col::HexDeployed] = 1.0;
        r[Col::HexX] = 0.1 * i;
        log.states.push_back(r);
    }
    log.metrics = {{"coverage_vehicle", "hexapod"}, {"coverage_swath", 1.0}};
    log.events = {{10.0, "detection", {}}, {20.0, "confirmation", {}}};
    const auto r = coverage_report(log);
    CHECK(r.area_per_hour == doctest::Approx(360.0).epsilon(1e-9));
    CHECK(r.detections == 1);
    CHECK(r.confirmations == 1);
    log.metrics.erase("coverage_swath");
    CHECK_THROWS_AS(coverage_report(log), EmptyReport);
}

TEST_CASE("report table") {
    const std::string text = format_report({{"seed", 4}, {"coverage", {{"area_per_hour_m2", 360.0}}}});
    CHECK(text.find("coverage.area_per_hour_m2") != std::string::npos);
    CHECK(text.find("360") != std::string::npos);
}
