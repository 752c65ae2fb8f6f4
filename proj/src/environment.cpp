#include "cues/environment.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cues {

void DisturbanceField::validate() const {
    if (!(mean_wind_speed >= 0.0)) throw InvalidArgument("DisturbanceField: mean_wind_speed must be >= 0");
    if (!(surface_current >= 0.0)) throw InvalidArgument("DisturbanceField: surface_current must be >= 0");
    if (!(wave_height >= 0.0)) throw InvalidArgument("DisturbanceField: wave_height must be >= 0");
    if (!(wave_period > 0.0)) throw InvalidArgument("DisturbanceField: wave_period must be positive");
    if (!(gust_time_constant > 0.0)) throw InvalidArgument("DisturbanceField: gust_time_constant must be positive");
    if (!(gust_sigma_fraction >= 0.0)) throw InvalidArgument("DisturbanceField: gust_sigma_fraction must be >= 0");
}

Vec2 DisturbanceField::current_velocity() const {
    return surface_current * Vec2(std::cos(current_direction), std::sin(current_direction));
}

Vec2 DisturbanceField::mean_wind_velocity() const {
    return mean_wind_speed * Vec2(std::cos(wind_direction), std::sin(wind_direction));
}

BodyWrench damping_wrench(const VehicleState3DOF& s, const LinearDamping& d, const Vec2& current_nav) {
    Vec2 rel = s.body_velocity();
    if (current_nav.x() != 0.0 || current_nav.y() != 0.0) rel -= rotate_nav_to_body(current_nav, s.psi);
    return {-d.d11 * rel.x(), -d.d22 * rel.y(), -d.d33 * s.r};
}

BodyWrench disturbance_wrench(const DisturbanceField& f, const VehicleState3DOF& s, double t, double wind_speed) {
    BodyWrench w;
    if (wind_speed != 0.0) {
        const Vec2 wind_nav = wind_speed * Vec2(std::cos(f.wind_direction), std::sin(f.wind_direction));
        const Vec2 rel_body = rotate_nav_to_body(wind_nav, s.psi) - s.body_velocity();
        const double k = 0.5 * f.air_density * f.wind_drag_area * rel_body.norm();
        w.X += k * rel_body.x();
        w.Y += k * rel_body.y();
    }
    if (f.wave_height > 0.0) {
        const double omega = 2.0 * kPi / f.wave_period;
        w.Y += f.wave_sway_force_per_m * f.wave_height * std::sin(omega * t);
        w.N += f.wave_yaw_moment_per_m * f.wave_height * std::sin(omega * t + 0.5 * kPi);
    }
    return w;
}

GustProcess::GustProcess(const DisturbanceField& field, SeededRng rng)
    : mean_(field.mean_wind_speed),
      tau_(field.gust_time_constant),
      sigma_(field.gust_sigma_fraction * field.mean_wind_speed),
      rng_(rng) {}

void GustProcess::advance(double dt) {
    if (sigma_ == 0.0) return;
    const double a = std::exp(-dt / tau_);
    gust_ = a * gust_ + sigma_ * std::sqrt(1.0 - a * a) * rng_.gaussian();
}

DisturbanceModel::DisturbanceModel(const DisturbanceField& field, std::uint64_t seed)
    : field_(field), gust_(field, SeededRng(seed, RngStream::Gust)) {
    field_.validate();
}

BodyWrench DisturbanceModel::wrench(const VehicleState3DOF& s, double t) const {
    return disturbance_wrench(field_, s, t, gust_.wind_speed());
}

const char* to_string(TerrainClass c) {
    switch (c) {
        case TerrainClass::Sand: return "sand";
        case TerrainClass::Rock: return "rock";
        case TerrainClass::Mud: return "mud";
    }
    return "?";
}

TerrainClass terrain_from_string(const std::string& s) {
    if (s == "sand" || s == "s") return TerrainClass::Sand;
    if (s == "rock" || s == "r") return TerrainClass::Rock;
    if (s == "mud" || s == "m") return TerrainClass::Mud;
    throw InvalidArgument("unknown terrain class '" + s + "'");
}

TerrainMap::TerrainMap(Vec2 origin, double cell_size, int nx, int ny, std::vector<TerrainSample> cells)
    : origin_(origin), cell_(cell_size), nx_(nx), ny_(ny), cells_(std::move(cells)) {
    if (!(cell_size > 0.0)) throw InvalidArgument("TerrainMap: cell_size must be positive");
    if (nx <= 0 || ny <= 0) throw InvalidArgument("TerrainMap: empty grid");
    if (cells_.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
        throw InvalidArgument("TerrainMap: grid is not fully tiled");
    }
    for (const auto& c : cells_) {
        if (!(c.depth > 0.0)) throw InvalidArgument("TerrainMap: depth must be positive");
    }
}

TerrainMap TerrainMap::uniform(Vec2 origin, double width, double height, double cell_size, TerrainClass c,
                               double depth) {
    const int nx = std::max(1, static_cast<int>(std::ceil(width / cell_size)));
    const int ny = std::max(1, static_cast<int>(std::ceil(height / cell_size)));
    return TerrainMap(origin, cell_size, nx, ny,
                      std::vector<TerrainSample>(static_cast<std::size_t>(nx) * ny, TerrainSample{c, depth}));
}

TerrainMap TerrainMap::parse(std::istream& in) {
    double cell = 0.0;
    Vec2 origin = Vec2::Zero();
    std::map<char, double> depth;
    std::vector<std::string> rows;
    bool in_grid = false;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw InvalidArgument("terrain map line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (in_grid) {
            rows.push_back(line);
            continue;
        }
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "cell_size") {
            if (!(ls >> cell)) fail("bad cell_size");
        } else if (key == "origin") {
            double x, y;
            if (!(ls >> x >> y)) fail("bad origin");
            origin = {x, y};
        } else if (key == "depth") {
            char c;
            double d;
            if (!(ls >> c >> d)) fail("bad depth entry");
            depth[c] = d;
        } else if (key == "grid") {
            in_grid = true;
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (rows.empty()) throw InvalidArgument("terrain map: no grid rows");
    const int nx = static_cast<int>(rows.front().size());
    const int ny = static_cast<int>(rows.size());
    std::vector<TerrainSample> cells(static_cast<std::size_t>(nx) * ny);
    for (int r = 0; r < ny; ++r) {
        const std::string& row = rows[r];
        if (static_cast<int>(row.size()) != nx) throw InvalidArgument("terrain map: ragged grid row " + std::to_string(r));
        const int j = ny - 1 - r;  // first text row is the top (max y)
        for (int i = 0; i < nx; ++i) {
            const char c = row[i];
            auto it = depth.find(c);
            if (it == depth.end()) {
                throw InvalidArgument(std::string("terrain map: no depth entry for cell class '") + c + "'");
            }
            cells[static_cast<std::size_t>(j) * nx + i] = {terrain_from_string(std::string(1, c)), it->second};
        }
    }
    return TerrainMap(origin, cell, nx, ny, std::move(cells));
}

TerrainMap TerrainMap::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open terrain map " + path.string());
    return parse(in);
}

bool TerrainMap::contains(const Vec2& p) const {
    const double fx = (p.x() - origin_.x()) / cell_;
    const double fy = (p.y() - origin_.y()) / cell_;
    return fx >= 0.0 && fy >= 0.0 && fx < nx_ && fy < ny_;
}

TerrainSample TerrainMap::at(const Vec2& p) const {
    if (!contains(p)) {
        throw OutOfBounds("terrain lookup outside map at (" + std::to_string(p.x()) + ", " + std::to_string(p.y()) + ")");
    }
    const int i = std::min(nx_ - 1, static_cast<int>(std::floor((p.x() - origin_.x()) / cell_)));
    const int j = std::min(ny_ - 1, static_cast<int>(std::floor((p.y() - origin_.y()) / cell_)));
    return cells_[static_cast<std::size_t>(j) * nx_ + i];
}

TerrainSample terrain_at(const TerrainMap& map, const Vec2& position) { return map.at(position); }

}  // namespace cues
