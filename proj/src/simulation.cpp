#include "cues/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "cues/error.hpp"

namespace cues {

BodyWrench tow_reaction_wrench(const Vec3& tension_on_tuv, double psi, double stern_offset) {
    const Vec2 f_body = rotate_nav_to_body(Vec2(-tension_on_tuv.x(), -tension_on_tuv.y()), psi);
    // Applied at (-stern_offset, 0) in the body frame.
    return {f_body.x(), f_body.y(), -stern_offset * f_body.y()};
}

AttachPoint asv_attach_point(const VehicleState3DOF& s, double stern_offset) {
    const Vec2 offset = rotate_body_to_nav(Vec2(-stern_offset, 0.0), s.psi);
    const Vec2 vel = rotate_body_to_nav(Vec2(s.u, s.v - stern_offset * s.r), s.psi);
    return {Vec3(s.x + offset.x(), s.y + offset.y(), 0.0), Vec3(vel.x(), vel.y(), 0.0)};
}

namespace {

using Vec12 = Eigen::Matrix<double, 12, 1>;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kLengthTol = 1e-9;

enum class Task { Deploy, Search, Reposition, Inspect, Return, Idle };

Scenario validated(Scenario sc) {
    sc.validate();
    return sc;
}

TerrainMap build_terrain(const Scenario& sc) {
    if (sc.world.terrain.map) return *sc.world.terrain.map;
    const auto& a = sc.mission.area;
    double x0 = std::min({a.x_min, sc.asv.start.x, sc.home().x(), sc.loiter_point().x(), sc.hexapod.start.x()});
    double y0 = std::min({a.y_min, sc.asv.start.y, sc.home().y(), sc.loiter_point().y(), sc.hexapod.start.y()});
    double x1 = std::max({a.x_max, sc.asv.start.x, sc.home().x(), sc.loiter_point().x(), sc.hexapod.start.x()});
    double y1 = std::max({a.y_max, sc.asv.start.y, sc.home().y(), sc.loiter_point().y(), sc.hexapod.start.y()});
    const double m = sc.world.terrain.margin;
    return TerrainMap::uniform(Vec2(x0 - m, y0 - m), x1 - x0 + 2 * m, y1 - y0 + 2 * m, 5.0,
                               sc.world.terrain.uniform_class, sc.world.terrain.uniform_depth);
}

}  // namespace

struct Simulation::Impl {
    Scenario sc;
    SimClock clock;
    std::int64_t n_steps;
    TerrainMap terrain;

    VehicleState3DOF truth;
    EstimatorState est;
    SensorSuite sensors;
    DisturbanceModel disturbance;
    PidController heading_pid;
    PidController speed_pid;
    BodyWrench last_control;
    std::optional<double> hold_heading;

    TowedBodyState tuv;
    Towline line;

    std::optional<HexapodState> hex;

    MissionPhase mission;
    Task task = Task::Idle;
    SearchPattern pattern;
    std::vector<Vec2> waypoints;
    std::size_t wp = 0;
    std::optional<DetectionSweep> sweep;
    std::vector<DetectionEvent> queue;
    std::optional<DetectionEvent> target;
    Vec2 loiter = Vec2::Zero();
    double task_started = 0.0;
    std::size_t detections = 0;
    std::size_t confirmations = 0;
    std::optional<EnvironmentalSampler> sampler;
    std::size_t env_samples = 0;
    std::map<std::string, std::size_t> rejections;

    RunLog log;
    bool done = false;
    bool aborted = false;
    bool truncated = false;

    explicit Impl(Scenario s)
        : sc(validated(std::move(s))),
          clock(sc.run.dt),
          n_steps(static_cast<std::int64_t>(std::llround(sc.run.duration / sc.run.dt))),
          terrain(build_terrain(sc)),
          truth(sc.asv.start),
          sensors(sc.controllers.sensor_rates, sc.controllers.sensor_noise, sc.run.dt, sc.run.seed),
          disturbance(sc.world.disturbances, sc.run.seed) {
        est.mean = to_vector(truth);
        est.P = sc.controllers.estimator.initial_variance.asDiagonal();
        est.Q = (sc.controllers.estimator.process_noise * sc.run.dt).asDiagonal();
        const auto& noise = sc.controllers.sensor_noise;
        est.R_gps = Eigen::Matrix2d::Identity() * noise.gps_sigma * noise.gps_sigma;
        est.R_compass = noise.compass_sigma * noise.compass_sigma;
        est.R_gyro = noise.gyro_sigma * noise.gyro_sigma;
        est.gate_sigma = sc.controllers.estimator.gate_sigma;

        const auto& p = sc.asv.params;
        const double max_moment = 2.0 * p.thruster_half_spacing * p.max_thrust_per_motor;
        heading_pid = PidController(sc.controllers.heading, {-max_moment, max_moment}, sc.controllers.heading_integral);
        speed_pid = PidController(sc.controllers.speed, {-2.0 * p.max_thrust_per_motor, 2.0 * p.max_thrust_per_motor},
                                  sc.controllers.speed_integral);

        line = sc.tuv.line;
        line.unstretched_length = sc.tuv.initial_length;
        if (sc.tuv.enabled) {
            const auto attach = asv_attach_point(truth, line.asv_stern_offset);
            const Vec2 back = rotate_body_to_nav(Vec2(-sc.tuv.initial_length, 0.0), truth.psi);
            tuv.position = attach.position + Vec3(back.x(), back.y(), 0.0);
            tuv.velocity = attach.velocity;
        } else {
            tuv.position = Vec3::Constant(kNaN);
            tuv.velocity = Vec3::Constant(kNaN);
        }

        switch (sc.mission.mode) {
            case MissionMode::Search:
                pattern = generate_lawnmower(sc.mission.area, sc.mission.swath, sc.mission.entry);
                waypoints = pattern.waypoints();
                for (std::size_t i = 0; i + 1 < waypoints.size(); i += 2) {
                    const Vec2 dir = (waypoints[i + 1] - waypoints[i]).normalized();
                    waypoints[i] -= sc.mission.leg_overrun * dir;
                    waypoints[i + 1] += sc.mission.leg_overrun * dir;
                }
                sweep.emplace(sc.mission.objects, 0.5 * sc.mission.swath, sc.mission.p_detect,
                              sc.mission.detection_sigma, sc.run.seed);
                sampler.emplace(sc.world.water_quality, sc.run.seed);
                task = Task::Deploy;
                loiter = sc.asv.start.position();
                break;
            case MissionMode::Loiter:
                loiter = sc.loiter_point();
                break;
            case MissionMode::Transect:
                loiter = sc.asv.start.position();
                hex = hexapod_at_rest(sc.hexapod.start, sc.hexapod.heading, sc.hexapod.params);
                hex->terrain = terrain_at(terrain, hex->position).terrain;
                break;
        }
    }

    double t() const { return clock.t(); }

    void event(const std::string& type, nlohmann::json data) {
        log.events.push_back({t(), type, std::move(data)});
    }

    // -- guidance --------------------------------------------------------

    GuidanceSetpoint base_setpoint(GuidanceMode mode, const Vec2& target, double speed) const {
        GuidanceSetpoint sp = sc.controllers.guidance;
        sp.mode = mode;
        sp.target = target;
        sp.cruise_speed = speed;
        return sp;
    }

    GuidanceSetpoint setpoint() const {
        const double cruise = sc.mission.search_speed;
        switch (task) {
            case Task::Search:
                if (wp >= waypoints.size()) return base_setpoint(GuidanceMode::Loiter, waypoints.back(), cruise);
                if (wp == 0) return base_setpoint(GuidanceMode::Waypoint, waypoints[0], cruise);
                {
                    auto sp = base_setpoint(GuidanceMode::PathFollow, waypoints[wp], cruise);
                    sp.leg_start = waypoints[wp - 1];
                    return sp;
                }
            case Task::Reposition:
                return base_setpoint(GuidanceMode::Waypoint, loiter, cruise);
            case Task::Return:
                return base_setpoint(GuidanceMode::Waypoint, sc.home(), cruise);
            case Task::Deploy:
            case Task::Inspect:
            case Task::Idle:
                break;
        }
        const double approach = sc.mission.mode == MissionMode::Search ? cruise : sc.controllers.guidance.cruise_speed;
        return base_setpoint(GuidanceMode::Loiter, loiter, approach);
    }

    double winch_command() const {
        if (!sc.tuv.enabled) return line.unstretched_length;
        switch (mission.phase) {
            case Phase::PreMission:
            case Phase::WideAreaSearch: return sc.tuv.tow_length;
            case Phase::DetailedInspection: return sc.tuv.standoff_length;
            case Phase::Retrieval:
            case Phase::Concluded: return sc.tuv.stowed_length;
        }
        return line.unstretched_length;
    }

    // -- coupled dynamics --------------------------------------------------

    Vec3 tension_at(const VehicleState3DOF& s, const Vec3& p, const Vec3& v) const {
        const auto attach = asv_attach_point(s, line.asv_stern_offset);
        const Vec3 nose = p;  // line attaches at the TUV origin plus nose offset along the line
        const Vec3 dir = attach.position - nose;
        const double len = dir.norm();
        const Vec3 tuv_attach = len > 0.0 ? Vec3(nose + line.tuv_nose_offset * dir / len) : nose;
        const double rate = separation_rate(attach.position, attach.velocity, tuv_attach, v);
        return towline_tension(attach.position, tuv_attach, rate, line);
    }

    Vec12 derivative(const Vec12& x, const BodyWrench& applied) const {
        const VehicleState3DOF s = from_vector(x.head<6>());
        BodyWrench w = applied + damping_wrench(s, sc.asv.damping, sc.world.disturbances.current_velocity());
        Vec12 d = Vec12::Zero();
        if (sc.tuv.enabled) {
            const Vec3 p = x.segment<3>(6);
            const Vec3 v = x.segment<3>(9);
            const Vec3 T = tension_at(s, p, v);
            w += tow_reaction_wrench(T, s.psi, line.asv_stern_offset);
            const Vec2 c = sc.world.disturbances.current_velocity();
            d.segment<3>(6) = v;
            d.segment<3>(9) = tuv_dynamics({p, v}, sc.tuv.params, T, Vec3(c.x(), c.y(), 0.0));
        }
        d.head<6>() = asv_derivative(x.head<6>(), sc.asv.params, w);
        return d;
    }

    void integrate(const BodyWrench& applied) {
        Vec12 x = Vec12::Zero();
        x.head<6>() = to_vector(truth);
        if (sc.tuv.enabled) {
            x.segment<3>(6) = tuv.position;
            x.segment<3>(9) = tuv.velocity;
        }
        const Vec12 next = rk4_step(x, [&](const Vec12& s) { return derivative(s, applied); }, clock.dt(), t());
        if (!next.allFinite()) throw IntegrationFault("non-finite state after integration", t());
        truth = from_vector(next.head<6>(), truth);
        if (sc.tuv.enabled) {
            tuv.position = next.segment<3>(6);
            tuv.velocity = next.segment<3>(9);
            // Surface above, seabed below (z positive down).
            if (tuv.position.z() < 0.0) {
                tuv.position.z() = 0.0;
                tuv.velocity.z() = std::max(0.0, tuv.velocity.z());
            }
            const Vec2 xy(tuv.position.x(), tuv.position.y());
            const double depth = terrain.contains(xy) ? terrain.at(xy).depth : sc.world.terrain.uniform_depth;
            if (tuv.position.z() > depth) {
                tuv.position.z() = depth;
                tuv.velocity.z() = std::min(0.0, tuv.velocity.z());
            }
        }
    }

    // -- mission -------------------------------------------------------------

    const PlantedObject& object_by_id(const std::string& id) const {
        for (const auto& o : sc.mission.objects) {
            if (o.id == id) return o;
        }
        throw InvalidArgument("unknown object id '" + id + "'");
    }

    void begin_next_target() {
        const Vec2 here = est.position();
        const std::size_t i = nearest_detection(queue, here);
        target = queue[i];
        queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(i));
        task_started = t();
        const double reach = sc.mission.inspection.tether_reach;
        if ((target->estimated_position - here).norm() <= reach - sc.controllers.guidance.arrival_radius) {
            loiter = here;
            deploy_hexapod();
        } else {
            loiter = target->estimated_position;
            task = Task::Reposition;
            event("reposition", {{"object_id", target->object_id}, {"x", loiter.x()}, {"y", loiter.y()}});
        }
    }

    void deploy_hexapod() {
        const Vec2 d = target->estimated_position - truth.position();
        hex = hexapod_at_rest(truth.position(), std::atan2(d.y(), d.x()), sc.hexapod.params);
        hex->terrain = terrain_at(terrain, hex->position).terrain;
        task = Task::Inspect;
        task_started = t();
        event("hexapod_deployed", {{"object_id", target->object_id}, {"x", hex->position.x()}, {"y", hex->position.y()}});
    }

    void finish_target(const std::string& type, nlohmann::json data) {
        data["object_id"] = target->object_id;
        event(type, std::move(data));
        if (hex) event("hexapod_recovered", {{"x", hex->position.x()}, {"y", hex->position.y()}});
        hex.reset();
        target.reset();
        task = Task::Idle;
    }

    double walk_timeout() const {
        const auto& s = sc.hexapod.params.speeds;
        return 2.0 * sc.mission.inspection.tether_reach / std::min({s.sand, s.rock, s.mud}) + 60.0;
    }

    // Hexapod advance for the inspection (step 7). Returns true when the
    // current target has been resolved this step.
    bool advance_inspection() {
        if (task == Task::Reposition) {
            if ((est.position() - loiter).norm() < sc.controllers.guidance.arrival_radius) {
                deploy_hexapod();
            } else if (t() - task_started > sc.mission.reposition_timeout) {
                finish_target("inspection_aborted", {{"reason", "reposition timeout"}});
                return true;
            }
            return false;
        }
        if (task != Task::Inspect || !hex) return false;
        const auto& obj = object_by_id(target->object_id);
        TerrainClass ground;
        try {
            ground = terrain_at(terrain, hex->position).terrain;
        } catch (const OutOfBounds& e) {
            finish_target("inspection_aborted", {{"reason", e.what()}});
            return true;
        }
        const auto stepped = inspect_target(*target, obj, *hex, loiter, sc.hexapod.params, ground, clock.dt(),
                                            sc.mission.inspection);
        hex = stepped.hexapod;
        switch (stepped.outcome) {
            case InspectionOutcome::Walking:
                if (hex->fault) {
                    finish_target("inspection_aborted", {{"reason", *hex->fault}});
                    return true;
                }
                if (t() - task_started > walk_timeout()) {
                    finish_target("inspection_aborted", {{"reason", "walk timeout"}});
                    return true;
                }
                return false;
            case InspectionOutcome::Confirmed:
                ++confirmations;
                finish_target("confirmation", {{"vehicle", to_string(DetectingVehicle::Hexapod)},
                                               {"x", obj.position.x()},
                                               {"y", obj.position.y()},
                                               {"class", to_string(obj.object_class)},
                                               {"hexapod_x", hex->position.x()},
                                               {"hexapod_y", hex->position.y()}});
                return true;
            case InspectionOutcome::Exhausted:
                finish_target("inspection_exhausted", {{"x", target->estimated_position.x()},
                                                       {"y", target->estimated_position.y()}});
                return true;
            case InspectionOutcome::NeedsReposition:
                hex.reset();
                loiter = target->estimated_position;
                task = Task::Reposition;
                task_started = t();
                event("reposition", {{"object_id", target->object_id}, {"x", loiter.x()}, {"y", loiter.y()}});
                return false;
            case InspectionOutcome::Aborted:
                finish_target("inspection_aborted", {{"reason", "aborted"}});
                return true;
        }
        return false;
    }

    void enter_phase(const MissionPhase& next) {
        event("phase_transition", {{"from", to_string(mission.phase)}, {"to", to_string(next.phase)}});
        mission = next;
        switch (next.phase) {
            case Phase::WideAreaSearch:
                task = Task::Search;
                break;
            case Phase::DetailedInspection:
                begin_next_target();
                break;
            case Phase::Retrieval:
                task = Task::Return;
                break;
            case Phase::Concluded:
                task = Task::Idle;
                loiter = sc.home();
                break;
            case Phase::PreMission:
                break;
        }
    }

    // -- one step ----------------------------------------------------------

    void record_hexapod(StateRecord& rec) const {
        rec[Col::HexDeployed] = hex ? 1.0 : 0.0;
        rec[Col::HexX] = hex ? hex->position.x() : kNaN;
        rec[Col::HexY] = hex ? hex->position.y() : kNaN;
        rec[Col::HexHeading] = hex ? hex->heading : kNaN;
        for (int leg = 0; leg < 6; ++leg) {
            const auto& q = hex ? hex->legs[static_cast<std::size_t>(leg)] : LegConfiguration{kNaN, kNaN, kNaN};
            rec.leg(leg, 0) = q.coxa;
            rec.leg(leg, 1) = q.knee;
            rec.leg(leg, 2) = q.femur;
        }
    }

    void do_step() {
        const double now = t();
        const std::int64_t k = clock.step();
        StateRecord rec;
        rec.t = now;
        rec.phase = mission.phase;
        const auto tv = to_vector(truth);
        for (int i = 0; i < 6; ++i) rec.values[static_cast<std::size_t>(Col::AsvX) + i] = tv(i);
        rec[Col::InnovGpsX] = rec[Col::InnovGpsY] = rec[Col::InnovCompass] = rec[Col::InnovGyro] = kNaN;

        // (1) sensors, (2) estimator
        const auto readings = sensors.sample(truth, k);
        if (k > 0) est = ekf_predict(est, last_control, sc.asv.params, clock.dt(), sc.asv.damping);
        for (const auto& z : readings) {
            const auto upd = ekf_update(est, z);
            est = upd.state;
            switch (z.kind) {
                case SensorKind::Gps:
                    rec[Col::InnovGpsX] = upd.innovation(0);
                    rec[Col::InnovGpsY] = upd.innovation(1);
                    break;
                case SensorKind::Compass: rec[Col::InnovCompass] = upd.innovation(0); break;
                case SensorKind::Gyro: rec[Col::InnovGyro] = upd.innovation(0); break;
            }
            if (!upd.accepted) {
                ++rejections[to_string(z.kind)];
                event("measurement_rejected", {{"sensor", to_string(z.kind)}, {"mahalanobis", upd.mahalanobis}});
            }
        }
        for (int i = 0; i < 6; ++i) {
            rec.values[static_cast<std::size_t>(Col::EstX) + i] = est.mean(i);
            rec.values[static_cast<std::size_t>(Col::VarX) + i] = est.P(i, i);
        }

        // (3) guidance, PID, allocation
        const GuidanceSetpoint sp = setpoint();
        GuidanceCommand cmd = guidance_step(sp, est);
        if (sp.mode == GuidanceMode::Loiter && (est.position() - sp.target).norm() <= sp.deadband_radius) {
            if (!hold_heading) hold_heading = est.heading();
            cmd.heading_error = wrap_angle(*hold_heading - est.heading());
        } else {
            hold_heading.reset();
        }
        // Slow down while the bow points away from the demand so the craft
        // pivots instead of orbiting its target.
        cmd.speed_cmd *= std::max(0.0, std::cos(cmd.heading_error));
        auto hstep = pid_step(heading_pid, cmd.heading_error, clock.dt());
        auto sstep = pid_step(speed_pid, cmd.speed_cmd - est.mean(3), clock.dt());
        heading_pid = hstep.controller;
        speed_pid = sstep.controller;
        const auto thrust = allocate_differential_thrust(sstep.output, hstep.output, sc.asv.params);
        rec[Col::CmdHeadingError] = cmd.heading_error;
        rec[Col::CmdSpeed] = cmd.speed_cmd;
        rec[Col::ThrustLeft] = thrust.left;
        rec[Col::ThrustRight] = thrust.right;

        // (4) disturbances, (5) towline
        const BodyWrench dist = disturbance.wrench(truth, now);
        const BodyWrench applied = thrust.realized + dist;
        rec[Col::WindSpeed] = disturbance.wind_speed();
        if (sc.tuv.enabled) line = winch_set_length(line, winch_command(), sc.tuv.winch_rate, clock.dt());
        Vec3 T = Vec3::Zero();
        BodyWrench tow;
        if (sc.tuv.enabled) {
            T = tension_at(truth, tuv.position, tuv.velocity);
            tow = tow_reaction_wrench(T, truth.psi, line.asv_stern_offset);
        }
        const BodyWrench external = dist + tow + damping_wrench(truth, sc.asv.damping,
                                                               sc.world.disturbances.current_velocity());
        rec[Col::ForceX] = external.X;
        rec[Col::ForceY] = external.Y;
        rec[Col::MomentN] = external.N;
        rec[Col::TensionX] = T.x();
        rec[Col::TensionY] = T.y();
        rec[Col::TensionZ] = T.z();
        rec[Col::TuvX] = tuv.position.x();
        rec[Col::TuvY] = tuv.position.y();
        rec[Col::TuvZ] = tuv.position.z();
        rec[Col::TuvVx] = tuv.velocity.x();
        rec[Col::TuvVy] = tuv.velocity.y();
        rec[Col::TuvVz] = tuv.velocity.z();
        rec[Col::TowLength] = sc.tuv.enabled ? line.unstretched_length : kNaN;
        record_hexapod(rec);

        // (6) integration
        integrate(applied);
        // The winch load cell reports the tow force, so the filter's control
        // input includes it alongside the thrust. With an anemometer the wind
        // drag is added too, evaluated at the estimate (waves stay unmodeled).
        last_control = thrust.realized + tow;
        if (sc.controllers.estimator.wind_feedforward) {
            DisturbanceField calm_sea = sc.world.disturbances;
            calm_sea.wave_height = 0.0;
            last_control = last_control + disturbance_wrench(calm_sea, from_vector(est.mean), now, disturbance.wind_speed());
        }

        // (7) hexapod
        bool target_resolved = false;
        if (sc.mission.mode == MissionMode::Transect && hex) {
            const TerrainClass ground = terrain_at(terrain, hex->position).terrain;
            hex = body_advance(*hex, sc.hexapod.heading, clock.dt(), ground, sc.hexapod.params);
            if (hex->fault) throw IntegrationFault("hexapod fault: " + *hex->fault, now);
        } else {
            target_resolved = advance_inspection();
        }

        // (8) detection sweep
        if (mission.phase == Phase::WideAreaSearch && sweep) {
            for (auto& ev : sweep->sweep(Vec2(tuv.position.x(), tuv.position.y()), now, DetectingVehicle::Tuv)) {
                ++detections;
                event("detection", {{"object_id", ev.object_id},
                                    {"vehicle", to_string(ev.vehicle)},
                                    {"x", ev.estimated_position.x()},
                                    {"y", ev.estimated_position.y()}});
                queue.push_back(ev);
            }
        }
        if (sampler && mission.phase != Phase::PreMission && mission.phase != Phase::Concluded) {
            if (auto s = sampler->maybe_sample(now, tuv.position)) {
                ++env_samples;
                event("environment_sample", {{"x", s->position.x()},
                                             {"y", s->position.y()},
                                             {"z", s->position.z()},
                                             {"temperature", s->temperature},
                                             {"turbidity", s->turbidity},
                                             {"salinity", s->salinity}});
            }
        }

        // (9) mission step
        if (sc.mission.mode == MissionMode::Search) {
            MissionSignals sig;
            sig.trigger = sc.mission.trigger;
            sig.queued_detections = queue.size();
            if (task == Task::Search && wp < waypoints.size() && cmd.arrived) {
                event("waypoint_reached", {{"index", wp}, {"x", waypoints[wp].x()}, {"y", waypoints[wp].y()}});
                sig.at_leg_boundary = wp % 2 == 1;
                ++wp;
            }
            sig.pattern_complete = wp >= waypoints.size();
            sig.deployment_complete = std::abs(line.unstretched_length - sc.tuv.tow_length) <= kLengthTol;
            if (mission.phase == Phase::DetailedInspection && target_resolved && !queue.empty()) {
                begin_next_target();
            }
            sig.inspection_finished = !target;
            sig.vehicles_recovered = !hex && line.unstretched_length <= sc.tuv.stowed_length + kLengthTol &&
                                     (est.position() - sc.home()).norm() < sc.controllers.guidance.arrival_radius;
            const MissionPhase next = mission_step(mission, sig, now);
            if (next.phase != mission.phase) enter_phase(next);
        }

        log.states.push_back(rec);
        disturbance.advance(clock.dt());
        clock.advance();
    }

    bool step() {
        if (done) return false;
        if (mission.phase == Phase::Concluded) {
            done = true;
            return false;
        }
        if (clock.step() >= n_steps) {
            truncated = sc.mission.mode == MissionMode::Search;
            if (truncated) event("truncated", {{"phase", to_string(mission.phase)}});
            done = true;
            return false;
        }
        const VehicleState3DOF last_truth = truth;
        const TowedBodyState last_tuv = tuv;
        try {
            do_step();
        } catch (const Error& e) {
            aborted = true;
            done = true;
            nlohmann::json dump = {{"asv",
                                    {{"x", last_truth.x},
                                     {"y", last_truth.y},
                                     {"psi", last_truth.psi},
                                     {"u", last_truth.u},
                                     {"v", last_truth.v},
                                     {"r", last_truth.r}}}};
            if (sc.tuv.enabled) {
                dump["tuv"] = {{"x", last_tuv.position.x()},
                               {"y", last_tuv.position.y()},
                               {"z", last_tuv.position.z()},
                               {"vx", last_tuv.velocity.x()},
                               {"vy", last_tuv.velocity.y()},
                               {"vz", last_tuv.velocity.z()}};
            }
            event("abort", {{"reason", e.what()}, {"last_good_state", dump}});
            return false;
        }
        return true;
    }

    nlohmann::json metrics() {
        nlohmann::json m;
        m["scenario"] = sc.name;
        m["mode"] = to_string(sc.mission.mode);
        m["seed"] = sc.run.seed;
        m["dt"] = sc.run.dt;
        m["steps"] = log.states.size();
        m["sim_time"] = static_cast<double>(log.states.size()) * sc.run.dt;
        m["final_phase"] = to_string(mission.phase);
        m["truncated"] = truncated;
        m["aborted"] = aborted;
        const bool hex_coverage = sc.mission.mode == MissionMode::Transect;
        m["coverage_vehicle"] = hex_coverage ? "hexapod" : "tuv";
        m["coverage_swath"] = hex_coverage ? sc.hexapod.swath : sc.mission.swath;
        m["detections"] = detections;
        m["confirmations"] = confirmations;
        m["objects"] = sc.mission.objects.size();
        m["environment_samples"] = env_samples;
        nlohmann::json rej = nlohmann::json::object();
        for (const auto& [k, v] : rejections) rej[k] = v;
        m["measurement_rejections"] = rej;
        if (sc.mission.mode == MissionMode::Search) m["pattern_length"] = pattern.path_length();

        log.metrics = m;
        try {
            m["coverage"] = to_json(coverage_report(log));
        } catch (const EmptyReport&) {
            m["coverage"] = nullptr;
        }

        if (sc.mission.mode == MissionMode::Loiter && !log.states.empty()) {
            const Vec2 target = sc.loiter_point();
            std::size_t inside = 0;
            double max_off = 0.0, sum_sq = 0.0;
            for (const auto& rec : log.states) {
                const double d = (Vec2(rec[Col::AsvX], rec[Col::AsvY]) - target).norm();
                if (d <= sc.mission.station_radius) ++inside;
                max_off = std::max(max_off, d);
                sum_sq += d * d;
            }
            const double n = static_cast<double>(log.states.size());
            m["station_keeping"] = {{"radius", sc.mission.station_radius},
                                    {"fraction_within", static_cast<double>(inside) / n},
                                    {"max_offset", max_off},
                                    {"rms_offset", std::sqrt(sum_sq / n)}};
        }
        return m;
    }
};

Simulation::Simulation(Scenario scenario) : impl_(std::make_unique<Impl>(std::move(scenario))) {}
Simulation::~Simulation() = default;
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;

bool Simulation::step() { return impl_->step(); }

RunLog Simulation::run() {
    while (impl_->step()) {
    }
    impl_->log.metrics = impl_->metrics();
    return impl_->log;
}

double Simulation::time() const { return impl_->t(); }
Phase Simulation::phase() const { return impl_->mission.phase; }
bool Simulation::finished() const { return impl_->done; }
bool Simulation::aborted() const { return impl_->aborted; }
const VehicleState3DOF& Simulation::asv() const { return impl_->truth; }
const EstimatorState& Simulation::estimate() const { return impl_->est; }
const TowedBodyState& Simulation::tuv() const { return impl_->tuv; }
const Towline& Simulation::towline() const { return impl_->line; }
std::optional<HexapodState> Simulation::hexapod() const { return impl_->hex; }
const RunLog& Simulation::log() const { return impl_->log; }

RunLog run_simulation(const Scenario& scenario) { return Simulation(scenario).run(); }

}  // namespace cues
