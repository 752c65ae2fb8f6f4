#pragma once

// In-memory run log plus its on-disk forms: states.csv (one row per step),
// events.jsonl and metrics.json.

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cues/coverage.hpp"
#include "cues/mission.hpp"

namespace cues {

/// Numeric CSV columns after `t` and `phase`, in file order.
enum class Col : std::size_t {
    AsvX, AsvY, AsvPsi, AsvU, AsvV, AsvR,
    EstX, EstY, EstPsi, EstU, EstV, EstR,
    VarX, VarY, VarPsi, VarU, VarV, VarR,
    InnovGpsX, InnovGpsY, InnovCompass, InnovGyro,
    CmdHeadingError, CmdSpeed, ThrustLeft, ThrustRight,
    ForceX, ForceY, MomentN,
    TensionX, TensionY, TensionZ,
    TuvX, TuvY, TuvZ, TuvVx, TuvVy, TuvVz, TowLength,
    HexDeployed, HexX, HexY, HexHeading,
    LegAngles,  // 18 columns: leg0_coxa, leg0_knee, leg0_femur, leg1_coxa, ...
    WindSpeed = LegAngles + 18,
    Count
};

inline constexpr std::size_t kNumericColumns = static_cast<std::size_t>(Col::Count);

/// Column names for the numeric block, matching Col.
const std::array<std::string, kNumericColumns>& numeric_column_names();

struct StateRecord {
    double t = 0.0;
    Phase phase = Phase::PreMission;
    std::array<double, kNumericColumns> values{};

    double& operator[](Col c) { return values[static_cast<std::size_t>(c)]; }
    double operator[](Col c) const { return values[static_cast<std::size_t>(c)]; }
    double& leg(int leg, int joint) { return values[static_cast<std::size_t>(Col::LegAngles) + 3 * leg + joint]; }
};

struct LogEvent {
    double t = 0.0;
    std::string type;
    nlohmann::json data = nlohmann::json::object();

    bool operator==(const LogEvent&) const = default;
};

struct RunLog {
    std::vector<StateRecord> states;
    std::vector<LogEvent> events;
    nlohmann::json metrics = nlohmann::json::object();
};

/// Bitwise-faithful comparison (NaN equals NaN).
bool same_log(const RunLog& a, const RunLog& b);

std::string states_to_csv(const std::vector<StateRecord>& states);
std::vector<StateRecord> states_from_csv(std::string_view csv);
std::string events_to_jsonl(const std::vector<LogEvent>& events);
std::vector<LogEvent> events_from_jsonl(std::string_view text);

enum class OutputFormat { Csv, Json };

/// Writes states.csv (Csv) and events.jsonl + metrics.json + report.txt (Json).
void emit_outputs(const RunLog& log, const std::filesystem::path& dir, const std::vector<OutputFormat>& formats);

/// Reads back whatever emit_outputs wrote.
RunLog read_run_dir(const std::filesystem::path& dir);

/// Coverage of the search vehicle recorded in the log. The metrics must name
/// `coverage_vehicle` ("tuv" or "hexapod") and `coverage_swath`.
CoverageReport coverage_report(const RunLog& log);

nlohmann::json to_json(const CoverageReport& r);
/// Human-readable metrics table.
std::string format_report(const nlohmann::json& metrics);

}  // namespace cues
