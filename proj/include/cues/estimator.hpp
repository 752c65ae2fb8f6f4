#pragma once

// Extended Kalman filter over the ASV state (x, y, psi, u, v, r), the
// simulated GPS / compass / gyro suite feeding it, and a small dense
// Kalman core shared with tests.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cues/asv.hpp"
#include "cues/control.hpp"
#include "cues/rng.hpp"

namespace cues {

using StateVec = Eigen::Matrix<double, 6, 1>;
using StateCov = Eigen::Matrix<double, 6, 6>;

/// Generic dense predict / update used by the ASV filter.
namespace kalman {

Eigen::MatrixXd predict_covariance(const Eigen::MatrixXd& P, const Eigen::MatrixXd& F, const Eigen::MatrixXd& Q);

struct Update {
    Eigen::VectorXd x;
    Eigen::MatrixXd P;
    Eigen::VectorXd innovation;
    double mahalanobis = 0.0;  // sqrt(y' S^-1 y)
    bool accepted = true;
};

/// K = P H' (H P H' + R)^-1, x+ = x + K y, P+ = (I - K H) P, then P+ is
/// symmetrized. Rows listed in `angle_rows` have their innovation wrapped.
/// A reading whose Mahalanobis distance exceeds `gate_sigma` (when > 0) is
/// rejected and x, P are returned unchanged.
Update update(const Eigen::VectorXd& x, const Eigen::MatrixXd& P, const Eigen::VectorXd& z,
              const Eigen::VectorXd& hx, const Eigen::MatrixXd& H, const Eigen::MatrixXd& R,
              const std::vector<int>& angle_rows = {}, double gate_sigma = 0.0);

}  // namespace kalman

enum class SensorKind { Gps, Compass, Gyro };

const char* to_string(SensorKind k);

struct SensorReading {
    SensorKind kind = SensorKind::Gps;
    double timestamp = 0.0;
    Eigen::VectorXd value;  // gps: (x, y); compass: (psi); gyro: (r)
};

struct SensorNoise {
    double gps_sigma = 1.25;       // [m] per axis
    double compass_sigma = 0.02;   // [rad]
    double gyro_sigma = 0.005;     // [rad/s]
};

struct SensorSchedule {
    double gps_hz = 1.0;
    double compass_hz = 10.0;
    double gyro_hz = 100.0;
};

/// Samples truth at each sensor's rate with i.i.d. Gaussian noise. Each
/// sensor draws from its own random stream.
class SensorSuite {
public:
    SensorSuite(const SensorSchedule& schedule, const SensorNoise& noise, double dt, std::uint64_t seed);

    /// Readings due at `step` (time step * dt).
    std::vector<SensorReading> sample(const VehicleState3DOF& truth, std::int64_t step);

    const SensorNoise& noise() const { return noise_; }

private:
    SensorNoise noise_;
    double dt_;
    std::int64_t gps_every_;
    std::int64_t compass_every_;
    std::int64_t gyro_every_;
    SeededRng gps_rng_;
    SeededRng compass_rng_;
    SeededRng gyro_rng_;
};

std::vector<SensorReading> sample_sensors(const VehicleState3DOF& truth, SensorSuite& suite, std::int64_t step);

struct EstimatorState {
    StateVec mean = StateVec::Zero();
    StateCov P = StateCov::Identity();
    StateCov Q = StateCov::Identity() * 1e-4;
    Eigen::Matrix2d R_gps = Eigen::Matrix2d::Identity() * (1.25 * 1.25);
    double R_compass = 0.02 * 0.02;
    double R_gyro = 0.005 * 0.005;
    double gate_sigma = 5.0;  // <= 0 disables gating

    Vec2 position() const { return {mean(0), mean(1)}; }
    double heading() const { return mean(2); }
};

/// Process model: one RK4 step of the ASV equations under the given control
/// wrench plus the modelled hull damping. Heading is wrapped.
StateVec asv_process(const StateVec& x, const BodyWrench& control, const AsvParams& params,
                     const LinearDamping& damping, double dt);

/// Exact Jacobian of asv_process with respect to the state (chain rule
/// through the four RK4 stages).
StateCov asv_process_jacobian(const StateVec& x, const BodyWrench& control, const AsvParams& params,
                              const LinearDamping& damping, double dt);

EstimatorState ekf_predict(const EstimatorState& est, const BodyWrench& control, const AsvParams& params, double dt,
                           const LinearDamping& damping = {});

struct EkfUpdate {
    EstimatorState state;
    Eigen::VectorXd innovation;
    double mahalanobis = 0.0;
    bool accepted = true;
};

EkfUpdate ekf_update(const EstimatorState& est, const SensorReading& z);

/// Normalized estimation error squared of `truth` under the estimate.
double nees(const EstimatorState& est, const StateVec& truth);

inline GuidanceCommand guidance_step(const GuidanceSetpoint& sp, const EstimatorState& est) {
    return guidance_step(sp, est.position(), est.heading());
}

}  // namespace cues
