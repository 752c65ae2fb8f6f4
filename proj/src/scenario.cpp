#include "cues/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>

#include "cues/error.hpp"

namespace cues {
namespace {

using nlohmann::json;

// A JSON object being consumed. Every key read is marked; finish() rejects
// whatever is left.
class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ScenarioError(path_.empty() ? "<root>" : path_, "must be an object");
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& raw(const std::string& key) {
        used_.insert(key);
        return j_.at(key);
    }

    Node child(const std::string& key) {
        used_.insert(key);
        return Node(j_.at(key), field(key));
    }

    double num(const std::string& key, double def, Unit unit = Unit::None) {
        if (!has(key)) return def;
        return parse_quantity(raw(key), unit, field(key));
    }

    bool boolean(const std::string& key, bool def) {
        if (!has(key)) return def;
        const auto& v = raw(key);
        if (!v.is_boolean()) throw ScenarioError(field(key), "must be true or false");
        return v.get<bool>();
    }

    std::string str(const std::string& key, const std::string& def) {
        if (!has(key)) return def;
        const auto& v = raw(key);
        if (!v.is_string()) throw ScenarioError(field(key), "must be a string");
        return v.get<std::string>();
    }

    Vec2 point(const std::string& key, const Vec2& def) {
        if (!has(key)) return def;
        Node n = child(key);
        Vec2 p(n.num("x", def.x(), Unit::Length), n.num("y", def.y(), Unit::Length));
        n.finish();
        return p;
    }

    PidGains gains(const std::string& key, const PidGains& def) {
        if (!has(key)) return def;
        Node n = child(key);
        PidGains g{n.num("kp", def.kp), n.num("ki", def.ki), n.num("kd", def.kd)};
        n.finish();
        return g;
    }

    Limits limits(const std::string& key, const Limits& def) {
        if (!has(key)) return def;
        const auto& v = raw(key);
        if (!v.is_array() || v.size() != 2) throw ScenarioError(field(key), "must be [min, max]");
        Limits l{parse_quantity(v[0], Unit::None, field(key)), parse_quantity(v[1], Unit::None, field(key))};
        if (!(l.min <= l.max)) throw ScenarioError(field(key), "min must not exceed max");
        return l;
    }

    StateVec vec6(const std::string& key, const StateVec& def) {
        if (!has(key)) return def;
        const auto& v = raw(key);
        if (!v.is_array() || v.size() != 6) throw ScenarioError(field(key), "must list 6 numbers (x, y, psi, u, v, r)");
        StateVec out;
        for (int i = 0; i < 6; ++i) out(i) = parse_quantity(v[static_cast<std::size_t>(i)], Unit::None, field(key));
        return out;
    }

    template <class F>
    auto enumerated(const std::string& key, F parse, decltype(parse(std::string())) def) {
        if (!has(key)) return def;
        const std::string s = str(key, "");
        try {
            return parse(s);
        } catch (const InvalidArgument& e) {
            throw ScenarioError(field(key), e.what());
        }
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (used_.count(it.key()) == 0) throw ScenarioError(field(it.key()), "unknown key");
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

struct UnitEntry {
    const char* name;
    double scale;
};

double unit_scale(Unit unit, const std::string& name, const std::string& field) {
    static const UnitEntry length[] = {{"m", 1.0}, {"km", 1000.0}, {"cm", 0.01}};
    static const UnitEntry speed[] = {{"m/s", 1.0}, {"km/h", 1.0 / 3.6}, {"kn", 1852.0 / 3600.0}, {"knots", 1852.0 / 3600.0}};
    static const UnitEntry angle[] = {{"deg", kPi / 180.0}, {"rad", 1.0}};
    static const UnitEntry rate[] = {{"deg/s", kPi / 180.0}, {"rad/s", 1.0}};
    static const UnitEntry time[] = {{"s", 1.0}, {"min", 60.0}, {"h", 3600.0}};
    auto find = [&](const auto& table) -> double {
        for (const auto& e : table) {
            if (name == e.name) return e.scale;
        }
        throw ScenarioError(field, "unsupported unit '" + name + "'");
    };
    switch (unit) {
        case Unit::Length: return find(length);
        case Unit::Speed: return find(speed);
        case Unit::Angle: return find(angle);
        case Unit::AngularRate: return find(rate);
        case Unit::Time: return find(time);
        case Unit::None: break;
    }
    throw ScenarioError(field, "takes a plain number, not '" + name + "'");
}

double default_scale(Unit unit) {
    return unit == Unit::Angle || unit == Unit::AngularRate ? kPi / 180.0 : 1.0;
}

std::vector<OutputFormat> parse_formats(const json& v, const std::string& field) {
    std::vector<std::string> names;
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        std::size_t start = 0;
        while (start <= s.size()) {
            auto comma = s.find(',', start);
            if (comma == std::string::npos) comma = s.size();
            names.push_back(s.substr(start, comma - start));
            start = comma + 1;
        }
    } else if (v.is_array()) {
        for (const auto& e : v) {
            if (!e.is_string()) throw ScenarioError(field, "entries must be strings");
            names.push_back(e.get<std::string>());
        }
    } else {
        throw ScenarioError(field, "must be a list or comma-separated string");
    }
    return parse_output_formats(names, field);
}

TerrainConfig parse_terrain(Node n, const std::filesystem::path& dir) {
    TerrainConfig t;
    if (n.has("file")) {
        std::filesystem::path p = n.str("file", "");
        if (p.is_relative()) p = dir / p;
        t.file = p;
        try {
            t.map = TerrainMap::load(p);
        } catch (const Error& e) {
            throw ScenarioError(n.field("file"), e.what());
        }
    }
    t.uniform_class = n.enumerated("uniform", terrain_from_string, t.uniform_class);
    t.uniform_depth = n.num("depth", t.uniform_depth, Unit::Length);
    t.margin = n.num("margin", t.margin, Unit::Length);
    n.finish();
    return t;
}

DisturbanceField parse_disturbances(Node n) {
    DisturbanceField d;
    d.mean_wind_speed = n.num("wind_speed", d.mean_wind_speed, Unit::Speed);
    d.wind_direction = n.num("wind_direction", d.wind_direction, Unit::Angle);
    d.surface_current = n.num("current_speed", d.surface_current, Unit::Speed);
    d.current_direction = n.num("current_direction", d.current_direction, Unit::Angle);
    d.wave_height = n.num("wave_height", d.wave_height, Unit::Length);
    d.wave_period = n.num("wave_period", d.wave_period, Unit::Time);
    d.gust_time_constant = n.num("gust_time_constant", d.gust_time_constant, Unit::Time);
    d.gust_sigma_fraction = n.num("gust_sigma_fraction", d.gust_sigma_fraction);
    d.air_density = n.num("air_density", d.air_density);
    d.wind_drag_area = n.num("wind_drag_area", d.wind_drag_area);
    d.wave_sway_force_per_m = n.num("wave_sway_force_per_m", d.wave_sway_force_per_m);
    d.wave_yaw_moment_per_m = n.num("wave_yaw_moment_per_m", d.wave_yaw_moment_per_m);
    n.finish();
    return d;
}

WaterQualityField parse_water_quality(Node n) {
    WaterQualityField w;
    w.temperature = n.num("temperature", w.temperature);
    w.turbidity = n.num("turbidity", w.turbidity);
    w.salinity = n.num("salinity", w.salinity);
    w.noise_fraction = n.num("noise_fraction", w.noise_fraction);
    w.sample_period = n.num("sample_period", w.sample_period, Unit::Time);
    n.finish();
    return w;
}

WorldConfig parse_world(Node n, const std::filesystem::path& dir) {
    WorldConfig w;
    w.water_density = n.num("water_density", w.water_density);
    if (n.has("terrain")) w.terrain = parse_terrain(n.child("terrain"), dir);
    if (n.has("disturbances")) w.disturbances = parse_disturbances(n.child("disturbances"));
    if (n.has("water_quality")) w.water_quality = parse_water_quality(n.child("water_quality"));
    n.finish();
    return w;
}

AsvConfig parse_asv(Node n) {
    AsvConfig a;
    a.params.m11 = n.num("m11", a.params.m11);
    a.params.m22 = n.num("m22", a.params.m22);
    a.params.m33 = n.num("m33", a.params.m33);
    a.params.thruster_half_spacing = n.num("thruster_half_spacing", a.params.thruster_half_spacing, Unit::Length);
    a.params.max_thrust_per_motor = n.num("max_thrust_per_motor", a.params.max_thrust_per_motor);
    if (n.has("damping")) {
        Node d = n.child("damping");
        a.damping.d11 = d.num("d11", a.damping.d11);
        a.damping.d22 = d.num("d22", a.damping.d22);
        a.damping.d33 = d.num("d33", a.damping.d33);
        d.finish();
    }
    if (n.has("start")) {
        Node s = n.child("start");
        a.start.x = s.num("x", 0.0, Unit::Length);
        a.start.y = s.num("y", 0.0, Unit::Length);
        a.start.psi = wrap_angle(s.num("heading", 0.0, Unit::Angle));
        a.start.u = s.num("surge", 0.0, Unit::Speed);
        s.finish();
    }
    if (n.has("home")) a.home = n.point("home", Vec2::Zero());
    n.finish();
    return a;
}

TuvConfig parse_tuv(Node n, double water_density) {
    TuvConfig t;
    t.params.water_density = water_density;
    t.enabled = n.boolean("enabled", t.enabled);
    t.params.mass = n.num("mass", t.params.mass);
    t.params.added_mass = n.num("added_mass", t.params.added_mass);
    t.params.foil_area = n.num("foil_area", t.params.foil_area);
    t.params.lift_coefficient = n.num("lift_coefficient", t.params.lift_coefficient);
    t.params.drag_coefficient = n.num("drag_coefficient", t.params.drag_coefficient);
    t.params.bluff_drag_area = n.num("bluff_drag_area", t.params.bluff_drag_area);
    t.params.net_buoyancy_fraction = n.num("net_buoyancy_fraction", t.params.net_buoyancy_fraction);
    if (n.has("towline")) {
        Node l = n.child("towline");
        t.line.stiffness = l.num("stiffness", t.line.stiffness);
        t.line.damping = l.num("damping", t.line.damping);
        t.line.asv_stern_offset = l.num("stern_offset", t.line.asv_stern_offset, Unit::Length);
        t.line.tuv_nose_offset = l.num("nose_offset", t.line.tuv_nose_offset, Unit::Length);
        l.finish();
    }
    t.winch_rate = n.num("winch_rate", t.winch_rate, Unit::Speed);
    t.initial_length = n.num("initial_length", t.initial_length, Unit::Length);
    t.tow_length = n.num("tow_length", t.tow_length, Unit::Length);
    t.standoff_length = n.num("standoff_length", t.standoff_length, Unit::Length);
    t.stowed_length = n.num("stowed_length", t.stowed_length, Unit::Length);
    n.finish();
    return t;
}

HexapodConfig parse_hexapod(Node n) {
    HexapodConfig h;
    auto& p = h.params;
    p.leg.l1 = n.num("l1", p.leg.l1, Unit::Length);
    p.leg.l2 = n.num("l2", p.leg.l2, Unit::Length);
    p.leg.elbow_down = n.boolean("elbow_down", p.leg.elbow_down);
    p.stride_length = n.num("stride_length", p.stride_length, Unit::Length);
    p.duty_factor = n.num("duty_factor", p.duty_factor);
    p.lift_height = n.num("lift_height", p.lift_height, Unit::Length);
    p.max_turn_rate = n.num("max_turn_rate", p.max_turn_rate * 180.0 / kPi, Unit::AngularRate);
    if (n.has("speeds")) {
        Node s = n.child("speeds");
        p.speeds.sand = s.num("sand", p.speeds.sand, Unit::Speed);
        p.speeds.rock = s.num("rock", p.speeds.rock, Unit::Speed);
        p.speeds.mud = s.num("mud", p.speeds.mud, Unit::Speed);
        s.finish();
    }
    h.swath = n.num("swath", h.swath, Unit::Length);
    h.start = n.point("start", h.start);
    h.heading = wrap_angle(n.num("heading", 0.0, Unit::Angle));
    n.finish();
    return h;
}

ControllerConfig parse_controllers(Node n) {
    ControllerConfig c;
    c.heading = n.gains("heading_pid", c.heading);
    c.speed = n.gains("speed_pid", c.speed);
    c.heading_integral = n.limits("heading_integral_limits", c.heading_integral);
    c.speed_integral = n.limits("speed_integral_limits", c.speed_integral);
    if (n.has("sensors")) {
        Node s = n.child("sensors");
        c.sensor_rates.gps_hz = s.num("gps_hz", c.sensor_rates.gps_hz);
        c.sensor_rates.compass_hz = s.num("compass_hz", c.sensor_rates.compass_hz);
        c.sensor_rates.gyro_hz = s.num("gyro_hz", c.sensor_rates.gyro_hz);
        c.sensor_noise.gps_sigma = s.num("gps_sigma", c.sensor_noise.gps_sigma, Unit::Length);
        c.sensor_noise.compass_sigma = s.num("compass_sigma", c.sensor_noise.compass_sigma * 180.0 / kPi, Unit::Angle);
        c.sensor_noise.gyro_sigma = s.num("gyro_sigma", c.sensor_noise.gyro_sigma * 180.0 / kPi, Unit::AngularRate);
        s.finish();
    }
    if (n.has("estimator")) {
        Node e = n.child("estimator");
        c.estimator.gate_sigma = e.num("gate_sigma", c.estimator.gate_sigma);
        c.estimator.process_noise = e.vec6("process_noise", c.estimator.process_noise);
        c.estimator.initial_variance = e.vec6("initial_variance", c.estimator.initial_variance);
        c.estimator.wind_feedforward = e.boolean("wind_feedforward", c.estimator.wind_feedforward);
        e.finish();
    }
    if (n.has("guidance")) {
        Node g = n.child("guidance");
        auto& sp = c.guidance;
        sp.arrival_radius = g.num("arrival_radius", sp.arrival_radius, Unit::Length);
        sp.cruise_speed = g.num("cruise_speed", sp.cruise_speed, Unit::Speed);
        sp.deadband_radius = g.num("deadband_radius", sp.deadband_radius, Unit::Length);
        sp.approach_gain = g.num("approach_gain", sp.approach_gain);
        sp.lookahead = g.num("lookahead", sp.lookahead, Unit::Length);
        g.finish();
    }
    n.finish();
    return c;
}

MissionMode mission_mode_from_string(const std::string& s) {
    if (s == "search") return MissionMode::Search;
    if (s == "loiter") return MissionMode::Loiter;
    if (s == "transect") return MissionMode::Transect;
    throw InvalidArgument("unknown mission mode '" + s + "' (search, loiter, transect)");
}

MissionConfig parse_mission(Node n) {
    MissionConfig m;
    m.mode = n.enumerated("mode", mission_mode_from_string, m.mode);
    if (n.has("area")) {
        Node a = n.child("area");
        m.area.x_min = a.num("x_min", m.area.x_min, Unit::Length);
        m.area.y_min = a.num("y_min", m.area.y_min, Unit::Length);
        m.area.x_max = a.num("x_max", m.area.x_max, Unit::Length);
        m.area.y_max = a.num("y_max", m.area.y_max, Unit::Length);
        a.finish();
    }
    m.swath = n.num("swath", m.swath, Unit::Length);
    m.entry = n.enumerated("entry", corner_from_string, m.entry);
    m.leg_overrun = n.num("leg_overrun", m.leg_overrun, Unit::Length);
    if (n.has("objects")) {
        const auto& arr = n.raw("objects");
        if (!arr.is_array()) throw ScenarioError(n.field("objects"), "must be a list");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            Node o(arr[i], n.field("objects") + "[" + std::to_string(i) + "]");
            PlantedObject obj;
            obj.id = o.str("id", "object" + std::to_string(i));
            obj.position = Vec2(o.num("x", 0.0, Unit::Length), o.num("y", 0.0, Unit::Length));
            obj.object_class = o.enumerated("class", object_class_from_string, obj.object_class);
            obj.detectability_radius = o.num("detectability_radius", 0.0, Unit::Length);
            o.finish();
            m.objects.push_back(obj);
        }
    }
    m.p_detect = n.num("p_detect", m.p_detect);
    m.detection_sigma = n.num("detection_sigma", m.detection_sigma, Unit::Length);
    m.trigger = n.enumerated("trigger", trigger_from_string, m.trigger);
    m.inspection.confirm_radius = n.num("confirm_radius", m.inspection.confirm_radius, Unit::Length);
    m.inspection.camera_range = n.num("camera_range", m.inspection.camera_range, Unit::Length);
    m.inspection.tether_reach = n.num("tether_reach", m.inspection.tether_reach, Unit::Length);
    m.search_speed = n.num("search_speed", m.search_speed, Unit::Speed);
    m.reposition_timeout = n.num("reposition_timeout", m.reposition_timeout, Unit::Time);
    if (n.has("loiter_point")) m.loiter_point = n.point("loiter_point", Vec2::Zero());
    m.station_radius = n.num("station_radius", m.station_radius, Unit::Length);
    n.finish();
    return m;
}

template <class F>
void rewrap(const std::string& field, F f) {
    try {
        f();
    } catch (const ScenarioError&) {
        throw;
    } catch (const Error& e) {
        throw ScenarioError(field, e.what());
    }
}

void require(bool ok, const std::string& field, const std::string& constraint) {
    if (!ok) throw ScenarioError(field, constraint);
}

}  // namespace

const char* to_string(MissionMode m) {
    switch (m) {
        case MissionMode::Search: return "search";
        case MissionMode::Loiter: return "loiter";
        case MissionMode::Transect: return "transect";
    }
    return "?";
}

std::vector<OutputFormat> parse_output_formats(const std::vector<std::string>& names, const std::string& field) {
    std::vector<OutputFormat> out;
    for (const auto& raw : names) {
        std::string s;
        for (char c : raw) {
            if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        OutputFormat f;
        if (s == "csv") {
            f = OutputFormat::Csv;
        } else if (s == "json") {
            f = OutputFormat::Json;
        } else {
            throw ScenarioError(field, "unknown output format '" + raw + "' (csv, json)");
        }
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    if (out.empty()) throw ScenarioError(field, "at least one output format is required");
    return out;
}

double parse_quantity(const nlohmann::json& value, Unit unit, const std::string& field) {
    double v = 0.0;
    if (value.is_number()) {
        v = value.get<double>() * default_scale(unit);
    } else if (value.is_string()) {
        const std::string s = value.get<std::string>();
        std::size_t used = 0;
        double number = 0.0;
        try {
            number = std::stod(s, &used);
        } catch (const std::exception&) {
            throw ScenarioError(field, "cannot read a number from '" + s + "'");
        }
        std::string rest = s.substr(used);
        rest.erase(0, rest.find_first_not_of(' '));
        rest.erase(rest.find_last_not_of(' ') + 1);
        v = rest.empty() ? number * default_scale(unit) : number * unit_scale(unit, rest, field);
    } else {
        throw ScenarioError(field, "must be a number or a quantity string");
    }
    if (!std::isfinite(v)) throw ScenarioError(field, "must be finite");
    return v;
}

Scenario parse_scenario(const nlohmann::json& doc, const std::filesystem::path& source_dir) {
    Node root(doc, "");
    Scenario sc;
    sc.source_dir = source_dir;
    sc.name = root.str("name", "scenario");

    if (!root.has("run")) throw ScenarioError("run", "required block (run.seed is mandatory)");
    {
        Node r = root.child("run");
        sc.run.dt = r.num("dt", sc.run.dt, Unit::Time);
        sc.run.duration = r.num("duration", sc.run.duration, Unit::Time);
        if (!r.has("seed")) throw ScenarioError("run.seed", "required");
        const auto& seed = r.raw("seed");
        if (!seed.is_number_integer() || (seed.is_number_integer() && !seed.is_number_unsigned() && seed.get<long long>() < 0)) {
            throw ScenarioError("run.seed", "must be a non-negative integer");
        }
        sc.run.seed = seed.get<std::uint64_t>();
        if (r.has("output_dir")) {
            std::filesystem::path p = r.str("output_dir", "");
            sc.run.output_dir = p.is_relative() && !source_dir.empty() ? source_dir / p : p;
        }
        if (r.has("formats")) sc.run.formats = parse_formats(r.raw("formats"), "run.formats");
        r.finish();
    }
    if (root.has("world")) sc.world = parse_world(root.child("world"), source_dir);
    sc.tuv.params.water_density = sc.world.water_density;
    if (root.has("vehicles")) {
        Node v = root.child("vehicles");
        if (v.has("asv")) sc.asv = parse_asv(v.child("asv"));
        if (v.has("tuv")) sc.tuv = parse_tuv(v.child("tuv"), sc.world.water_density);
        if (v.has("hexapod")) sc.hexapod = parse_hexapod(v.child("hexapod"));
        v.finish();
    }
    if (root.has("controllers")) sc.controllers = parse_controllers(root.child("controllers"));
    if (root.has("mission")) sc.mission = parse_mission(root.child("mission"));
    root.finish();
    sc.validate();
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError(path.string(), std::string("not valid JSON: ") + e.what());
    }
    return parse_scenario(doc, path.parent_path());
}

void Scenario::validate() const {
    require(run.dt > 0.0, "run.dt", "must be positive");
    require(run.duration >= 0.0, "run.duration", "must be >= 0");
    require(world.water_density > 0.0, "world.water_density", "must be positive");
    require(world.terrain.uniform_depth > 0.0, "world.terrain.depth", "must be positive");
    require(world.terrain.margin >= 0.0, "world.terrain.margin", "must be >= 0");
    rewrap("world.disturbances", [&] { world.disturbances.validate(); });
    require(world.water_quality.sample_period > 0.0, "world.water_quality.sample_period", "must be positive");

    rewrap("vehicles.asv", [&] { asv.params.validate(); });
    require(asv.damping.d11 >= 0.0 && asv.damping.d22 >= 0.0 && asv.damping.d33 >= 0.0, "vehicles.asv.damping",
            "coefficients must be >= 0");
    rewrap("vehicles.tuv", [&] {
        tuv.params.validate();
        tuv.line.validate();
    });
    require(tuv.winch_rate > 0.0, "vehicles.tuv.winch_rate", "must be positive");
    require(tuv.stowed_length > 0.0 && tuv.stowed_length <= tuv.standoff_length &&
                tuv.standoff_length <= tuv.tow_length && tuv.tow_length <= kCableStockLength,
            "vehicles.tuv", "need 0 < stowed_length <= standoff_length <= tow_length <= 30 m");
    require(tuv.initial_length > 0.0 && tuv.initial_length <= kCableStockLength, "vehicles.tuv.initial_length",
            "must be in (0, 30] m");
    rewrap("vehicles.hexapod", [&] { hexapod.params.validate(); });
    require(hexapod.swath > 0.0, "vehicles.hexapod.swath", "must be positive");

    rewrap("controllers.sensors", [&] { SensorSuite(controllers.sensor_rates, controllers.sensor_noise, run.dt, 0); });
    rewrap("controllers.guidance", [&] { controllers.guidance.validate(); });
    require((controllers.estimator.process_noise.array() >= 0.0).all(), "controllers.estimator.process_noise",
            "entries must be >= 0");
    require((controllers.estimator.initial_variance.array() > 0.0).all(), "controllers.estimator.initial_variance",
            "entries must be positive");

    require(mission.swath > 0.0, "mission.swath", "must be positive");
    require(mission.leg_overrun >= 0.0, "mission.leg_overrun", "must be >= 0");
    require(mission.area.width() > 0.0 && mission.area.height() > 0.0, "mission.area", "x_max > x_min and y_max > y_min");
    require(mission.p_detect >= 0.0 && mission.p_detect <= 1.0, "mission.p_detect", "must be in [0, 1]");
    require(mission.detection_sigma >= 0.0, "mission.detection_sigma", "must be >= 0");
    require(mission.search_speed > 0.0, "mission.search_speed", "must be positive");
    require(mission.reposition_timeout > 0.0, "mission.reposition_timeout", "must be positive");
    require(mission.inspection.confirm_radius > 0.0, "mission.confirm_radius", "must be positive");
    require(mission.station_radius > 0.0, "mission.station_radius", "must be positive");
    std::set<std::string> ids;
    for (const auto& obj : mission.objects) {
        const std::string field = "mission.objects[" + obj.id + "]";
        require(ids.insert(obj.id).second, field, "duplicate object id '" + obj.id + "'");
        require(mission.area.contains(obj.position), field, "object '" + obj.id + "' lies outside the search area");
        require(obj.detectability_radius >= 0.0, field, "detectability_radius must be >= 0");
    }
    if (mission.mode == MissionMode::Search) {
        require(tuv.enabled, "vehicles.tuv.enabled", "search missions need the towed vehicle");
    }
    if (world.terrain.map && mission.mode != MissionMode::Loiter) {
        const Vec2 probe = mission.mode == MissionMode::Transect ? hexapod.start : Vec2(mission.area.x_min, mission.area.y_min);
        require(world.terrain.map->contains(probe), "world.terrain.file",
                mission.mode == MissionMode::Transect ? "map does not cover the hexapod start"
                                                      : "map does not cover the search area");
    }
}

}  // namespace cues
