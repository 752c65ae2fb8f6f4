#pragma once

// Mission orchestration primitives: the five-phase state machine, lawnmower
// search patterns, per-pass probabilistic detection, hexapod target
// inspection and environmental sampling.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cues/hexapod.hpp"
#include "cues/rng.hpp"
#include "cues/tuv.hpp"
#include "cues/world.hpp"

namespace cues {

enum class Phase { PreMission, WideAreaSearch, DetailedInspection, Retrieval, Concluded };

inline constexpr std::array<Phase, 5> kAllPhases{Phase::PreMission, Phase::WideAreaSearch, Phase::DetailedInspection,
                                                 Phase::Retrieval, Phase::Concluded};

const char* to_string(Phase p);
Phase phase_from_string(const std::string& s);

bool is_legal_transition(Phase from, Phase to);
/// Throws IllegalTransition unless from -> to is an edge of the mission graph.
void require_transition(Phase from, Phase to);

struct MissionPhase {
    Phase phase = Phase::PreMission;
    double entered_at = 0.0;  // [s]
};

/// When a queued detection interrupts the search.
enum class InspectionTrigger { Immediate, LegBoundary, PatternComplete };

InspectionTrigger trigger_from_string(const std::string& s);
const char* to_string(InspectionTrigger t);

/// Observations the orchestrator reacts to during one step.
struct MissionSignals {
    bool deployment_complete = false;
    bool at_leg_boundary = false;
    bool pattern_complete = false;
    std::size_t queued_detections = 0;
    bool inspection_finished = false;  // current target confirmed or exhausted
    bool vehicles_recovered = false;
    InspectionTrigger trigger = InspectionTrigger::LegBoundary;
};

/// Pure reducer over (phase, signals). At most one transition per call.
MissionPhase mission_step(const MissionPhase& current, const MissionSignals& signals, double t);

/// Explicit transition request; throws IllegalTransition on a missing edge.
MissionPhase request_transition(const MissionPhase& current, Phase target, double t);

struct Rect {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    bool contains(const Vec2& p) const {
        return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min && p.y() <= y_max;
    }
};

enum class Corner { SouthWest, SouthEast, NorthWest, NorthEast };

Corner corner_from_string(const std::string& s);

struct SearchLeg {
    Vec2 start;
    Vec2 end;
};

/// Boustrophedon coverage: legs run parallel to y and are spaced across x.
struct SearchPattern {
    Rect area;
    double swath = 0.0;
    std::vector<SearchLeg> legs;
    Vec2 entry = Vec2::Zero();

    /// Leg endpoints in travel order.
    std::vector<Vec2> waypoints() const;
    double path_length() const;
};

SearchPattern generate_lawnmower(const Rect& area, double swath, Corner entry = Corner::SouthWest);

enum class ObjectClass { Weapon, Clothing, Device, Other };

const char* to_string(ObjectClass c);
ObjectClass object_class_from_string(const std::string& s);

struct PlantedObject {
    std::string id;
    Vec2 position = Vec2::Zero();
    ObjectClass object_class = ObjectClass::Other;
    double detectability_radius = 0.0;  // [m] widens the footprint for this object
};

enum class DetectingVehicle { Tuv, Hexapod };

const char* to_string(DetectingVehicle v);

struct DetectionEvent {
    std::string object_id;
    DetectingVehicle vehicle = DetectingVehicle::Tuv;
    double timestamp = 0.0;
    Vec2 estimated_position = Vec2::Zero();
    bool confirmed = false;
};

/// Footprint sensor with one Bernoulli trial per pass: a pass starts when an
/// object enters the footprint and ends when it leaves.
class DetectionSweep {
public:
    DetectionSweep(std::vector<PlantedObject> objects, double footprint, double p_detect, double position_sigma,
                   std::uint64_t seed);

    std::vector<DetectionEvent> sweep(const Vec2& vehicle_pos, double t, DetectingVehicle vehicle);

    const std::vector<PlantedObject>& objects() const { return objects_; }
    bool detected(const std::string& id) const { return detected_.count(id) > 0; }
    std::size_t detected_count() const { return detected_.size(); }
    std::uint64_t passes() const { return passes_; }

private:
    std::vector<PlantedObject> objects_;
    double footprint_;
    double p_detect_;
    double sigma_;
    std::vector<bool> in_footprint_;
    std::set<std::string> detected_;
    std::uint64_t passes_ = 0;
    SeededRng trial_rng_;
    SeededRng noise_rng_;
};

std::vector<DetectionEvent> sensor_sweep_detect(const Vec2& vehicle_pos, DetectionSweep& sweep, double t,
                                                DetectingVehicle vehicle = DetectingVehicle::Tuv);

/// Index into `queue` of the detection nearest to `from`.
std::size_t nearest_detection(const std::vector<DetectionEvent>& queue, const Vec2& from);

struct InspectionConfig {
    double confirm_radius = 0.5;  // [m]
    double camera_range = 3.0;    // [m] hexapod sees the true object within this range
    double tether_reach = kCableStockLength;  // [m] from the ASV loiter point
};

enum class InspectionOutcome { Walking, Confirmed, Exhausted, NeedsReposition, Aborted };

const char* to_string(InspectionOutcome o);

struct InspectionStep {
    InspectionOutcome outcome = InspectionOutcome::Walking;
    HexapodState hexapod;
    Vec2 goal = Vec2::Zero();  // where the hexapod is walking
};

/// One step of a hexapod inspection. The hexapod walks straight to the
/// detection's estimated position; once there, a true object within camera
/// range becomes the goal and is confirmed inside the confirm radius.
/// Targets beyond tether reach of the ASV loiter point report
/// NeedsReposition without moving.
InspectionStep inspect_target(const DetectionEvent& event, const PlantedObject& truth, const HexapodState& hexapod,
                              const Vec2& asv_loiter_point, const HexapodParams& params, TerrainClass terrain,
                              double dt, const InspectionConfig& cfg = {});

struct EnvironmentalSample {
    double timestamp = 0.0;
    Vec3 position = Vec3::Zero();
    double temperature = 0.0;  // [deg C]
    double turbidity = 0.0;    // arbitrary units
    double salinity = 0.0;     // [PSU]
};

/// Smooth synthetic water-quality fields: base + gradient . (x, y, depth) + noise.
struct WaterQualityField {
    double temperature = 22.0;
    Vec3 temperature_gradient{0.0, 0.0, -0.05};
    double turbidity = 5.0;
    Vec3 turbidity_gradient{0.01, 0.0, 0.02};
    double salinity = 33.0;
    Vec3 salinity_gradient{0.0, 0.002, 0.01};
    double noise_fraction = 0.01;
    double sample_period = 10.0;  // [s]
};

class EnvironmentalSampler {
public:
    EnvironmentalSampler(const WaterQualityField& field, std::uint64_t seed);

    /// Returns a sample when one is due at time t (every sample_period).
    std::optional<EnvironmentalSample> maybe_sample(double t, const Vec3& position);

private:
    WaterQualityField field_;
    SeededRng rng_;
    double next_due_ = 0.0;
};

}  // namespace cues
