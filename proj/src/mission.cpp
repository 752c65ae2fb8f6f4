#include "cues/mission.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cues {

const char* to_string(Phase p) {
    switch (p) {
        case Phase::PreMission: return "PreMission";
        case Phase::WideAreaSearch: return "WideAreaSearch";
        case Phase::DetailedInspection: return "DetailedInspection";
        case Phase::Retrieval: return "Retrieval";
        case Phase::Concluded: return "Concluded";
    }
    return "?";
}

Phase phase_from_string(const std::string& s) {
    for (Phase p : kAllPhases) {
        if (s == to_string(p)) return p;
    }
    throw InvalidArgument("unknown mission phase '" + s + "'");
}

bool is_legal_transition(Phase from, Phase to) {
    switch (from) {
        case Phase::PreMission: return to == Phase::WideAreaSearch;
        case Phase::WideAreaSearch: return to == Phase::DetailedInspection || to == Phase::Retrieval;
        case Phase::DetailedInspection: return to == Phase::WideAreaSearch || to == Phase::Retrieval;
        case Phase::Retrieval: return to == Phase::Concluded;
        case Phase::Concluded: return false;
    }
    return false;
}

void require_transition(Phase from, Phase to) {
    if (!is_legal_transition(from, to)) throw IllegalTransition(to_string(from), to_string(to));
}

MissionPhase request_transition(const MissionPhase& current, Phase target, double t) {
    require_transition(current.phase, target);
    if (t < current.entered_at) throw InvalidArgument("mission timestamps must be monotone");
    return {target, t};
}

InspectionTrigger trigger_from_string(const std::string& s) {
    if (s == "immediate") return InspectionTrigger::Immediate;
    if (s == "leg_boundary") return InspectionTrigger::LegBoundary;
    if (s == "pattern_complete") return InspectionTrigger::PatternComplete;
    throw InvalidArgument("unknown inspection trigger '" + s + "'");
}

const char* to_string(InspectionTrigger t) {
    switch (t) {
        case InspectionTrigger::Immediate: return "immediate";
        case InspectionTrigger::LegBoundary: return "leg_boundary";
        case InspectionTrigger::PatternComplete: return "pattern_complete";
    }
    return "?";
}

MissionPhase mission_step(const MissionPhase& current, const MissionSignals& sig, double t) {
    auto go = [&](Phase target) { return request_transition(current, target, t); };
    switch (current.phase) {
        case Phase::PreMission:
            if (sig.deployment_complete) return go(Phase::WideAreaSearch);
            break;
        case Phase::WideAreaSearch: {
            if (sig.queued_detections > 0) {
                const bool trigger = sig.pattern_complete || sig.trigger == InspectionTrigger::Immediate ||
                                     (sig.trigger == InspectionTrigger::LegBoundary && sig.at_leg_boundary);
                if (trigger) return go(Phase::DetailedInspection);
            } else if (sig.pattern_complete) {
                return go(Phase::Retrieval);
            }
            break;
        }
        case Phase::DetailedInspection:
            if (sig.inspection_finished && sig.queued_detections == 0) {
                return go(sig.pattern_complete ? Phase::Retrieval : Phase::WideAreaSearch);
            }
            break;
        case Phase::Retrieval:
            if (sig.vehicles_recovered) return go(Phase::Concluded);
            break;
        case Phase::Concluded:
            break;
    }
    return current;
}

Corner corner_from_string(const std::string& s) {
    if (s == "sw" || s == "southwest") return Corner::SouthWest;
    if (s == "se" || s == "southeast") return Corner::SouthEast;
    if (s == "nw" || s == "northwest") return Corner::NorthWest;
    if (s == "ne" || s == "northeast") return Corner::NorthEast;
    throw InvalidArgument("unknown entry corner '" + s + "'");
}

std::vector<Vec2> SearchPattern::waypoints() const {
    std::vector<Vec2> out;
    out.reserve(legs.size() * 2);
    for (const auto& leg : legs) {
        out.push_back(leg.start);
        out.push_back(leg.end);
    }
    return out;
}

double SearchPattern::path_length() const {
    const auto wp = waypoints();
    double len = 0.0;
    for (std::size_t i = 1; i < wp.size(); ++i) len += (wp[i] - wp[i - 1]).norm();
    return len;
}

SearchPattern generate_lawnmower(const Rect& area, double swath, Corner entry) {
    if (!(swath > 0.0)) throw InvalidArgument("generate_lawnmower: swath must be positive");
    if (!(area.width() > 0.0) || !(area.height() > 0.0)) throw InvalidArgument("generate_lawnmower: degenerate area");

    const int n = std::max(1, static_cast<int>(std::ceil(area.width() / swath - 1e-12)));
    const double spacing = area.width() / n;
    const bool from_east = entry == Corner::SouthEast || entry == Corner::NorthEast;
    bool northbound = entry == Corner::SouthWest || entry == Corner::SouthEast;

    SearchPattern p;
    p.area = area;
    p.swath = swath;
    for (int i = 0; i < n; ++i) {
        const int k = from_east ? n - 1 - i : i;
        const double x = area.x_min + spacing * (k + 0.5);
        const Vec2 south(x, area.y_min);
        const Vec2 north(x, area.y_max);
        p.legs.push_back(northbound ? SearchLeg{south, north} : SearchLeg{north, south});
        northbound = !northbound;
    }
    p.entry = p.legs.front().start;
    return p;
}

const char* to_string(ObjectClass c) {
    switch (c) {
        case ObjectClass::Weapon: return "weapon";
        case ObjectClass::Clothing: return "clothing";
        case ObjectClass::Device: return "device";
        case ObjectClass::Other: return "other";
    }
    return "?";
}

ObjectClass object_class_from_string(const std::string& s) {
    if (s == "weapon") return ObjectClass::Weapon;
    if (s == "clothing") return ObjectClass::Clothing;
    if (s == "device") return ObjectClass::Device;
    if (s == "other") return ObjectClass::Other;
    throw InvalidArgument("unknown object class '" + s + "'");
}

const char* to_string(DetectingVehicle v) { return v == DetectingVehicle::Tuv ? "TUV" : "BU-HEXA"; }

DetectionSweep::DetectionSweep(std::vector<PlantedObject> objects, double footprint, double p_detect,
                               double position_sigma, std::uint64_t seed)
    : objects_(std::move(objects)),
      footprint_(footprint),
      p_detect_(p_detect),
      sigma_(position_sigma),
      in_footprint_(objects_.size(), false),
      trial_rng_(seed, RngStream::Detection),
      noise_rng_(seed, RngStream::DetectionNoise) {
    if (!(footprint > 0.0)) throw InvalidArgument("DetectionSweep: footprint must be positive");
    if (!(p_detect >= 0.0 && p_detect <= 1.0)) throw InvalidArgument("DetectionSweep: P_d must be in [0, 1]");
    if (!(position_sigma >= 0.0)) throw InvalidArgument("DetectionSweep: position sigma must be >= 0");
}

std::vector<DetectionEvent> DetectionSweep::sweep(const Vec2& vehicle_pos, double t, DetectingVehicle vehicle) {
    std::vector<DetectionEvent> events;
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        const PlantedObject& obj = objects_[i];
        const bool inside = (obj.position - vehicle_pos).norm() <= footprint_ + obj.detectability_radius;
        const bool entering = inside && !in_footprint_[i];
        in_footprint_[i] = inside;
        if (!entering || detected_.count(obj.id) > 0) continue;
        ++passes_;
        if (!trial_rng_.bernoulli(p_detect_)) continue;
        detected_.insert(obj.id);
        DetectionEvent ev;
        ev.object_id = obj.id;
        ev.vehicle = vehicle;
        ev.timestamp = t;
        ev.estimated_position = obj.position + Vec2(noise_rng_.gaussian(sigma_), noise_rng_.gaussian(sigma_));
        events.push_back(ev);
    }
    return events;
}

std::vector<DetectionEvent> sensor_sweep_detect(const Vec2& vehicle_pos, DetectionSweep& sweep, double t,
                                                DetectingVehicle vehicle) {
    return sweep.sweep(vehicle_pos, t, vehicle);
}

std::size_t nearest_detection(const std::vector<DetectionEvent>& queue, const Vec2& from) {
    if (queue.empty()) throw InvalidArgument("nearest_detection: empty queue");
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const double d = (queue[i].estimated_position - from).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

const char* to_string(InspectionOutcome o) {
    switch (o) {
        case InspectionOutcome::Walking: return "walking";
        case InspectionOutcome::Confirmed: return "confirmed";
        case InspectionOutcome::Exhausted: return "exhausted";
        case InspectionOutcome::NeedsReposition: return "needs_reposition";
        case InspectionOutcome::Aborted: return "aborted";
    }
    return "?";
}

InspectionStep inspect_target(const DetectionEvent& event, const PlantedObject& truth, const HexapodState& hexapod,
                              const Vec2& asv_loiter_point, const HexapodParams& params, TerrainClass terrain,
                              double dt, const InspectionConfig& cfg) {
    InspectionStep out;
    out.hexapod = hexapod;
    out.goal = event.estimated_position;
    if ((event.estimated_position - asv_loiter_point).norm() > cfg.tether_reach) {
        out.outcome = InspectionOutcome::NeedsReposition;
        return out;
    }
    const double to_truth = (truth.position - hexapod.position).norm();
    if (to_truth <= cfg.confirm_radius) {
        out.outcome = InspectionOutcome::Confirmed;
        out.goal = truth.position;
        return out;
    }
    if (to_truth <= cfg.camera_range) {
        out.goal = truth.position;
    } else if ((event.estimated_position - hexapod.position).norm() <= cfg.confirm_radius) {
        out.outcome = InspectionOutcome::Exhausted;
        return out;
    }
    const Vec2 d = out.goal - hexapod.position;
    out.hexapod = body_advance(hexapod, std::atan2(d.y(), d.x()), dt, terrain, params);
    if ((out.hexapod.position - asv_loiter_point).norm() > cfg.tether_reach) {
        // The tether holds the robot at its reach.
        out.hexapod.position = hexapod.position;
    }
    return out;
}

EnvironmentalSampler::EnvironmentalSampler(const WaterQualityField& field, std::uint64_t seed)
    : field_(field), rng_(seed, RngStream::Environment) {
    if (!(field.sample_period > 0.0)) throw InvalidArgument("EnvironmentalSampler: sample period must be positive");
}

std::optional<EnvironmentalSample> EnvironmentalSampler::maybe_sample(double t, const Vec3& position) {
    if (t + 1e-9 < next_due_) return std::nullopt;
    // Periods missed while sampling was off are skipped, not replayed.
    while (next_due_ <= t + 1e-9) next_due_ += field_.sample_period;
    auto field_value = [&](double base, const Vec3& grad) {
        const double v = base + grad.dot(position);
        return v + field_.noise_fraction * std::abs(v) * rng_.gaussian();
    };
    EnvironmentalSample s;
    s.timestamp = t;
    s.position = position;
    s.temperature = field_value(field_.temperature, field_.temperature_gradient);
    s.turbidity = std::max(0.0, field_value(field_.turbidity, field_.turbidity_gradient));
    s.salinity = std::max(0.0, field_value(field_.salinity, field_.salinity_gradient));
    return s;
}

}  // namespace cues
