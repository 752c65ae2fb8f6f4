#pragma once

// The coupled ASV / TUV / hexapod loop driven by a Scenario.

#include <memory>
#include <optional>

#include "cues/estimator.hpp"
#include "cues/run_log.hpp"
#include "cues/scenario.hpp"

namespace cues {

/// Tow reaction on the ASV for a tension `tension_on_tuv` applied at a
/// point `stern_offset` behind the ASV origin. Horizontal components only;
/// the vertical part is carried by buoyancy.
BodyWrench tow_reaction_wrench(const Vec3& tension_on_tuv, double psi, double stern_offset);

/// Stern attach point (z = 0) and its velocity in the navigation frame.
struct AttachPoint {
    Vec3 position;
    Vec3 velocity;
};
AttachPoint asv_attach_point(const VehicleState3DOF& s, double stern_offset);

/// Per step, in order: sensors, EKF predict/update, guidance + PID +
/// allocation, disturbances, towline, ASV + TUV integration, hexapod,
/// detection sweep, mission step.
class Simulation {
public:
    explicit Simulation(Scenario scenario);
    ~Simulation();
    Simulation(Simulation&&) noexcept;
    Simulation& operator=(Simulation&&) noexcept;

    /// Advances one dt. Returns false once the run has ended (Concluded,
    /// duration cap or abort); further calls do nothing.
    bool step();
    /// Steps to the end and returns the log with final metrics.
    RunLog run();

    double time() const;
    Phase phase() const;
    bool finished() const;
    bool aborted() const;
    const VehicleState3DOF& asv() const;
    const EstimatorState& estimate() const;
    const TowedBodyState& tuv() const;
    const Towline& towline() const;
    std::optional<HexapodState> hexapod() const;
    const RunLog& log() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

RunLog run_simulation(const Scenario& scenario);

}  // namespace cues
