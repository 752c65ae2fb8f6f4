#pragma once

// Declarative scenario: every knob of a run, parsed from a JSON tree with
// unit-bearing strings ("20 km/h", "90 deg") and documented defaults.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cues/asv.hpp"
#include "cues/control.hpp"
#include "cues/environment.hpp"
#include "cues/estimator.hpp"
#include "cues/hexapod.hpp"
#include "cues/mission.hpp"
#include "cues/run_log.hpp"
#include "cues/tuv.hpp"

namespace cues {

struct RunConfig {
    double dt = 0.01;          // [s]
    double duration = 3600.0;  // [s] cap on simulated time
    std::uint64_t seed = 0;
    std::filesystem::path output_dir;  // empty: CLI decides
    std::vector<OutputFormat> formats{OutputFormat::Csv, OutputFormat::Json};
};

struct TerrainConfig {
    std::optional<std::filesystem::path> file;  // resolved against the scenario's directory
    TerrainClass uniform_class = TerrainClass::Sand;
    double uniform_depth = 30.0;  // [m]
    double margin = 200.0;        // [m] uniform map extends this far around the area
    std::optional<TerrainMap> map;  // loaded from `file` at parse time
};

struct WorldConfig {
    double water_density = 1025.0;
    TerrainConfig terrain;
    DisturbanceField disturbances;
    WaterQualityField water_quality;
};

struct AsvConfig {
    AsvParams params;
    LinearDamping damping{20.0, 100.0, 40.0};
    VehicleState3DOF start;
    std::optional<Vec2> home;  // defaults to the start position
};

struct TuvConfig {
    bool enabled = true;
    TuvParams params;
    Towline line;
    double winch_rate = 1.0;        // [m/s]
    double initial_length = 5.0;    // [m] paid out at t = 0
    double tow_length = kCableStockLength;  // [m] during wide-area search
    double standoff_length = 5.0;   // [m] while the hexapod inspects
    double stowed_length = 1.0;     // [m] at recovery
};

struct HexapodConfig {
    HexapodParams params;
    double swath = 1.0;  // [m] camera path width on the seabed
    Vec2 start = Vec2::Zero();  // transect mode only
    double heading = 0.0;       // [rad] transect mode only
};

struct EstimatorConfig {
    double gate_sigma = 5.0;
    /// Continuous-time intensities; the filter uses Q = diag(q) * dt.
    StateVec process_noise = (StateVec() << 1e-4, 1e-4, 1e-5, 0.02, 0.02, 1e-3).finished();
    StateVec initial_variance = (StateVec() << 1.0, 1.0, 0.01, 0.01, 0.01, 0.001).finished();
    bool wind_feedforward = true;  // anemometer wind drag in the process model
};

struct ControllerConfig {
    PidGains heading{8.0, 0.5, 2.0};
    PidGains speed{30.0, 15.0, 0.0};
    Limits heading_integral{-2.0, 2.0};
    Limits speed_integral{-4.0, 4.0};
    SensorSchedule sensor_rates;
    SensorNoise sensor_noise;
    EstimatorConfig estimator;
    GuidanceSetpoint guidance;  // mode/target ignored; radii, gains, cruise speed
};

enum class MissionMode { Search, Loiter, Transect };

const char* to_string(MissionMode m);

struct MissionConfig {
    MissionMode mode = MissionMode::Search;
    Rect area{0.0, 0.0, 100.0, 100.0};
    double swath = 10.0;  // [m] TUV camera swath; footprint radius is half of it
    Corner entry = Corner::SouthWest;
    double leg_overrun = 0.0;  // [m] each leg extended past the area edge, so the towed body reaches it
    std::vector<PlantedObject> objects;
    double p_detect = 0.9;
    double detection_sigma = 1.0;  // [m] per-axis noise on reported positions
    InspectionTrigger trigger = InspectionTrigger::LegBoundary;
    InspectionConfig inspection;
    double search_speed = 1.5;  // [m/s]
    double reposition_timeout = 300.0;  // [s]
    std::optional<Vec2> loiter_point;   // loiter mode; defaults to the ASV start
    double station_radius = 2.5;        // [m] loiter metric
};

struct Scenario {
    std::string name;
    std::filesystem::path source_dir;  // for relative paths inside the file
    RunConfig run;
    WorldConfig world;
    AsvConfig asv;
    TuvConfig tuv;
    HexapodConfig hexapod;
    ControllerConfig controllers;
    MissionConfig mission;

    /// Cross-checks between blocks. Throws ScenarioError naming the field.
    void validate() const;
    Vec2 home() const { return asv.home.value_or(asv.start.position()); }
    Vec2 loiter_point() const { return mission.loiter_point.value_or(asv.start.position()); }
};

/// Parses, converts units, fills defaults and validates. Unknown keys are
/// rejected with their full path.
Scenario parse_scenario(const nlohmann::json& doc, const std::filesystem::path& source_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

/// Quantity parsing used by the loader: a bare number is taken in the
/// field's default unit, a string carries its own ("20 km/h", "0.5 rad").
enum class Unit { Length, Speed, Angle, AngularRate, Time, None };
double parse_quantity(const nlohmann::json& value, Unit unit, const std::string& field);

/// "csv" / "json" (case-insensitive, duplicates dropped).
std::vector<OutputFormat> parse_output_formats(const std::vector<std::string>& names, const std::string& field);

}  // namespace cues
