#pragma once

#include <vector>

#include "cues/world.hpp"

namespace cues {

struct TrackPoint {
    double t = 0.0;
    Vec2 position = Vec2::Zero();
    bool active = false;  // searching at this sample
};

struct CoverageReport {
    double area_searched = 0.0;     // [m^2]
    double area_per_hour = 0.0;     // [m^2/h]
    double active_time = 0.0;       // [s]
    double distance_traveled = 0.0; // [m] over active segments
    std::size_t detections = 0;
    std::size_t confirmations = 0;
};

/// Area of the union of swath-wide corridors around the active parts of the
/// track, on a grid of `cell` metres. A cell counts when its centre projects
/// onto a segment and lies within swath/2 of it, or lies within swath/2 of
/// an interior vertex (so corners are joined without end caps).
double swept_area(const std::vector<TrackPoint>& track, double swath, double cell = 0.25);

/// Area, rate (area per active hour), active time and active distance.
/// Throws EmptyReport when the track has no active segment.
CoverageReport coverage_from_track(const std::vector<TrackPoint>& track, double swath, double cell = 0.25);

}  // namespace cues
