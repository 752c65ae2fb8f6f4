#pragma once

// Disturbance forcing on the ASV (wind, gusts, waves), water-relative hull
// damping, and the seabed terrain map.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cues/asv.hpp"
#include "cues/rng.hpp"
#include "cues/world.hpp"

namespace cues {

/// Directions are the heading the flow travels toward, in the navigation
/// frame (radians from +x toward +y).
struct DisturbanceField {
    double mean_wind_speed = 0.0;     // [m/s]
    double wind_direction = 0.0;      // [rad]
    double surface_current = 0.0;     // [m/s]
    double current_direction = 0.0;   // [rad]
    double wave_height = 0.0;         // [m]
    double wave_period = 4.0;         // [s]

    double gust_time_constant = 10.0;  // [s]
    double gust_sigma_fraction = 0.1;  // gust std as fraction of mean wind
    double air_density = 1.225;        // [kg/m^3]
    double wind_drag_area = 0.4;       // C_w * A_w [m^2]
    double wave_sway_force_per_m = 8.0;  // [N per m of wave height]
    double wave_yaw_moment_per_m = 1.0;  // [N m per m of wave height]

    void validate() const;
    Vec2 current_velocity() const;
    Vec2 mean_wind_velocity() const;
};

/// Water-relative linear damping: -D (nu - R(psi)^T v_current).
BodyWrench damping_wrench(const VehicleState3DOF& s, const LinearDamping& d, const Vec2& current_nav = Vec2::Zero());

/// Wind drag plus wave perturbation for a given instantaneous wind speed.
/// Current does not appear here: it acts through damping_wrench.
BodyWrench disturbance_wrench(const DisturbanceField& field, const VehicleState3DOF& s, double t, double wind_speed);

/// First-order Gauss-Markov gust on the wind speed, discretized exactly so
/// the stationary std is independent of dt.
class GustProcess {
public:
    GustProcess(const DisturbanceField& field, SeededRng rng);

    double wind_speed() const noexcept { return mean_ + gust_; }
    double gust() const noexcept { return gust_; }
    void advance(double dt);

private:
    double mean_;
    double tau_;
    double sigma_;
    double gust_ = 0.0;
    SeededRng rng_;
};

/// Gust process plus field, stepped once per sim step.
class DisturbanceModel {
public:
    DisturbanceModel(const DisturbanceField& field, std::uint64_t seed);

    const DisturbanceField& field() const noexcept { return field_; }
    BodyWrench wrench(const VehicleState3DOF& s, double t) const;
    double wind_speed() const noexcept { return gust_.wind_speed(); }
    void advance(double dt) { gust_.advance(dt); }

private:
    DisturbanceField field_;
    GustProcess gust_;
};

enum class TerrainClass { Sand, Rock, Mud };

const char* to_string(TerrainClass c);
TerrainClass terrain_from_string(const std::string& s);

struct TerrainSample {
    TerrainClass terrain;
    double depth;  // [m]
};

/// Regular grid of terrain cells. Cell (i, j) covers
/// [origin.x + i*cell, origin.x + (i+1)*cell) x [origin.y + j*cell, ...).
class TerrainMap {
public:
    TerrainMap(Vec2 origin, double cell_size, int nx, int ny, std::vector<TerrainSample> cells);

    static TerrainMap uniform(Vec2 origin, double width, double height, double cell_size, TerrainClass c, double depth);

    /// Text format:
    ///   cell_size <m>
    ///   origin <x> <y>
    ///   depth <s|r|m> <m>      (one line per class used)
    ///   grid
    ///   <row of s/r/m chars>   (first row is the northmost, max y)
    /// '#' starts a comment line.
    static TerrainMap parse(std::istream& in);
    static TerrainMap load(const std::filesystem::path& path);

    TerrainSample at(const Vec2& position) const;
    bool contains(const Vec2& position) const;

    Vec2 origin() const { return origin_; }
    double cell_size() const { return cell_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }

private:
    Vec2 origin_;
    double cell_;
    int nx_;
    int ny_;
    std::vector<TerrainSample> cells_;  // row-major, j * nx + i
};

TerrainSample terrain_at(const TerrainMap& map, const Vec2& position);

}  // namespace cues
