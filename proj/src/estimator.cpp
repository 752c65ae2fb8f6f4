#include "cues/estimator.hpp"

#include <cmath>

#include "cues/environment.hpp"

namespace cues {

namespace kalman {

Eigen::MatrixXd predict_covariance(const Eigen::MatrixXd& P, const Eigen::MatrixXd& F, const Eigen::MatrixXd& Q) {
    Eigen::MatrixXd Pn = F * P * F.transpose() + Q;
    return 0.5 * (Pn + Pn.transpose());
}

Update update(const Eigen::VectorXd& x, const Eigen::MatrixXd& P, const Eigen::VectorXd& z, const Eigen::VectorXd& hx,
              const Eigen::MatrixXd& H, const Eigen::MatrixXd& R, const std::vector<int>& angle_rows,
              double gate_sigma) {
    Update out;
    out.innovation = z - hx;
    for (int row : angle_rows) out.innovation(row) = wrap_angle(out.innovation(row));

    const Eigen::MatrixXd S = H * P * H.transpose() + R;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
    if (!lu.isInvertible() || !(std::abs(lu.rcond()) > 1e-14)) {
        throw NumericallySingular("innovation covariance is singular");
    }
    const Eigen::MatrixXd S_inv = lu.inverse();
    out.mahalanobis = std::sqrt(std::max(0.0, out.innovation.dot(S_inv * out.innovation)));
    if (gate_sigma > 0.0 && out.mahalanobis > gate_sigma) {
        out.x = x;
        out.P = P;
        out.accepted = false;
        return out;
    }
    const Eigen::MatrixXd K = P * H.transpose() * S_inv;
    out.x = x + K * out.innovation;
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(P.rows(), P.cols());
    const Eigen::MatrixXd Pn = (I - K * H) * P;
    out.P = 0.5 * (Pn + Pn.transpose());
    return out;
}

}  // namespace kalman

const char* to_string(SensorKind k) {
    switch (k) {
        case SensorKind::Gps: return "gps";
        case SensorKind::Compass: return "compass";
        case SensorKind::Gyro: return "gyro";
    }
    return "?";
}

namespace {

std::int64_t steps_per_sample(double hz, double dt, const char* name) {
    if (!(hz > 0.0)) throw InvalidArgument(std::string("sensor rate for ") + name + " must be positive");
    const double ratio = 1.0 / (hz * dt);
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw InvalidArgument(std::string("sensor rate for ") + name + " does not divide the simulation rate");
    }
    return static_cast<std::int64_t>(rounded);
}

}  // namespace

SensorSuite::SensorSuite(const SensorSchedule& schedule, const SensorNoise& noise, double dt, std::uint64_t seed)
    : noise_(noise),
      dt_(dt),
      gps_every_(steps_per_sample(schedule.gps_hz, dt, "gps")),
      compass_every_(steps_per_sample(schedule.compass_hz, dt, "compass")),
      gyro_every_(steps_per_sample(schedule.gyro_hz, dt, "gyro")),
      gps_rng_(seed, RngStream::Gps),
      compass_rng_(seed, RngStream::Compass),
      gyro_rng_(seed, RngStream::Gyro) {}

std::vector<SensorReading> SensorSuite::sample(const VehicleState3DOF& truth, std::int64_t step) {
    std::vector<SensorReading> out;
    const double t = static_cast<double>(step) * dt_;
    if (step % gps_every_ == 0) {
        Eigen::VectorXd z(2);
        z << truth.x + gps_rng_.gaussian(noise_.gps_sigma), truth.y + gps_rng_.gaussian(noise_.gps_sigma);
        out.push_back({SensorKind::Gps, t, z});
    }
    if (step % compass_every_ == 0) {
        Eigen::VectorXd z(1);
        z << wrap_angle(truth.psi + compass_rng_.gaussian(noise_.compass_sigma));
        out.push_back({SensorKind::Compass, t, z});
    }
    if (step % gyro_every_ == 0) {
        Eigen::VectorXd z(1);
        z << truth.r + gyro_rng_.gaussian(noise_.gyro_sigma);
        out.push_back({SensorKind::Gyro, t, z});
    }
    return out;
}

std::vector<SensorReading> sample_sensors(const VehicleState3DOF& truth, SensorSuite& suite, std::int64_t step) {
    return suite.sample(truth, step);
}

namespace {

StateVec model_derivative(const StateVec& x, const BodyWrench& control, const AsvParams& p, const LinearDamping& d) {
    VehicleState3DOF s;
    s.psi = x(2);
    s.u = x(3);
    s.v = x(4);
    s.r = x(5);
    return asv_derivative(x, p, control + damping_wrench(s, d));
}

// Continuous-time Jacobian of model_derivative.
StateCov model_jacobian(const StateVec& x, const AsvParams& p, const LinearDamping& d) {
    const double psi = x(2), u = x(3), v = x(4), r = x(5);
    const double c = std::cos(psi), s = std::sin(psi);
    StateCov A = StateCov::Zero();
    A(0, 2) = -u * s - v * c;
    A(0, 3) = c;
    A(0, 4) = -s;
    A(1, 2) = u * c - v * s;
    A(1, 3) = s;
    A(1, 4) = c;
    A(2, 5) = 1.0;
    // m11 u_dot = X + (m33 - m22) r v - d11 u
    A(3, 3) = -d.d11 / p.m11;
    A(3, 4) = (p.m33 - p.m22) * r / p.m11;
    A(3, 5) = (p.m33 - p.m22) * v / p.m11;
    // m22 v_dot = Y + (m11 - m33) u r - d22 v
    A(4, 3) = (p.m11 - p.m33) * r / p.m22;
    A(4, 4) = -d.d22 / p.m22;
    A(4, 5) = (p.m11 - p.m33) * u / p.m22;
    // m33 r_dot = N + (m22 - m11) u v - d33 r
    A(5, 3) = (p.m22 - p.m11) * v / p.m33;
    A(5, 4) = (p.m22 - p.m11) * u / p.m33;
    A(5, 5) = -d.d33 / p.m33;
    return A;
}

}  // namespace

StateVec asv_process(const StateVec& x, const BodyWrench& control, const AsvParams& params,
                     const LinearDamping& damping, double dt) {
    StateVec next = rk4_step(x, [&](const StateVec& s) { return model_derivative(s, control, params, damping); }, dt);
    next(2) = wrap_angle(next(2));
    return next;
}

StateCov asv_process_jacobian(const StateVec& x, const BodyWrench& control, const AsvParams& params,
                              const LinearDamping& damping, double dt) {
    const StateCov I = StateCov::Identity();
    const double h2 = 0.5 * dt;
    const StateVec k1 = model_derivative(x, control, params, damping);
    const StateVec x2 = x + h2 * k1;
    const StateVec k2 = model_derivative(x2, control, params, damping);
    const StateVec x3 = x + h2 * k2;
    const StateVec k3 = model_derivative(x3, control, params, damping);
    const StateVec x4 = x + dt * k3;

    const StateCov J1 = model_jacobian(x, params, damping);
    const StateCov J2 = model_jacobian(x2, params, damping) * (I + h2 * J1);
    const StateCov J3 = model_jacobian(x3, params, damping) * (I + h2 * J2);
    const StateCov J4 = model_jacobian(x4, params, damping) * (I + dt * J3);
    return I + (dt / 6.0) * (J1 + 2.0 * J2 + 2.0 * J3 + J4);
}

EstimatorState ekf_predict(const EstimatorState& est, const BodyWrench& control, const AsvParams& params, double dt,
                           const LinearDamping& damping) {
    EstimatorState out = est;
    const StateCov F = asv_process_jacobian(est.mean, control, params, damping, dt);
    out.mean = asv_process(est.mean, control, params, damping, dt);
    const StateCov P = F * est.P * F.transpose() + est.Q;
    out.P = 0.5 * (P + P.transpose());
    if (!out.P.allFinite() || !out.mean.allFinite()) throw EstimatorDivergence("EKF prediction produced non-finite values");
    return out;
}

EkfUpdate ekf_update(const EstimatorState& est, const SensorReading& z) {
    Eigen::MatrixXd H;
    Eigen::MatrixXd R;
    Eigen::VectorXd hx;
    std::vector<int> angle_rows;
    switch (z.kind) {
        case SensorKind::Gps:
            H = Eigen::MatrixXd::Zero(2, 6);
            H(0, 0) = 1.0;
            H(1, 1) = 1.0;
            R = est.R_gps;
            hx = est.mean.head<2>();
            break;
        case SensorKind::Compass:
            H = Eigen::MatrixXd::Zero(1, 6);
            H(0, 2) = 1.0;
            R = Eigen::MatrixXd::Constant(1, 1, est.R_compass);
            hx = Eigen::VectorXd::Constant(1, est.mean(2));
            angle_rows = {0};
            break;
        case SensorKind::Gyro:
            H = Eigen::MatrixXd::Zero(1, 6);
            H(0, 5) = 1.0;
            R = Eigen::MatrixXd::Constant(1, 1, est.R_gyro);
            hx = Eigen::VectorXd::Constant(1, est.mean(5));
            break;
    }
    if (z.value.size() != H.rows()) throw InvalidArgument("ekf_update: reading has the wrong dimension");

    const kalman::Update u = kalman::update(est.mean, est.P, z.value, hx, H, R, angle_rows, est.gate_sigma);
    EkfUpdate out{est, u.innovation, u.mahalanobis, u.accepted};
    if (u.accepted) {
        out.state.mean = u.x;
        out.state.mean(2) = wrap_angle(out.state.mean(2));
        out.state.P = u.P;
        if (!out.state.P.allFinite()) throw EstimatorDivergence("EKF update produced non-finite covariance");
    }
    return out;
}

double nees(const EstimatorState& est, const StateVec& truth) {
    StateVec e = truth - est.mean;
    e(2) = wrap_angle(e(2));
    return e.dot(est.P.ldlt().solve(e));
}

}  // namespace cues
