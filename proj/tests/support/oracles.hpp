#pragma once

// Reference computations for the tests, written independently of the
// library implementations they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Textbook Kalman measurement update.
struct KalmanResult {
    Eigen::VectorXd x;
    Eigen::MatrixXd P;
};

inline KalmanResult kalman_update(const Eigen::VectorXd& x, const Eigen::MatrixXd& P, const Eigen::VectorXd& z,
                                  const Eigen::MatrixXd& H, const Eigen::MatrixXd& R) {
    const Eigen::MatrixXd S = H * P * H.transpose() + R;
    const Eigen::MatrixXd K = P * H.transpose() * S.inverse();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(x.size(), x.size());
    return {x + K * (z - H * x), (I - K * H) * P};
}

/// Chi-square quantile (Wilson-Hilferty).
inline double chi2_quantile(double dof, double z) {
    const double a = 2.0 / (9.0 * dof);
    return dof * std::pow(1.0 - a + z * std::sqrt(a), 3);
}

/// 95% band for the mean of `runs` independent chi-square(dof) samples.
inline std::pair<double, double> nees_band(int dof, int runs) {
    const double k = static_cast<double>(dof) * runs;
    return {chi2_quantile(k, -1.959963985) / runs, chi2_quantile(k, 1.959963985) / runs};
}

/// Central-difference Jacobian.
inline Eigen::MatrixXd numeric_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                        const Eigen::VectorXd& x, double h) {
    const Eigen::VectorXd f0 = f(x);
    Eigen::MatrixXd J(f0.size(), x.size());
    for (int i = 0; i < x.size(); ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        J.col(i) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return J;
}

/// Steady tow of a point body behind a surface point moving at `speed`
/// along +x in still water. Forces on the body (z down):
///   foil drag and lift  0.5 rho V^2 S (C_D, C_L), lift pointing down,
///   bluff drag          0.5 rho CdA V^2,
///   net weight          -fraction m g (down when fraction < 0),
///   line tension        k (s - L0) toward the attach point.
/// Bisection on the line angle below horizontal, gamma, for which the
/// tension that balances the horizontal drag also balances the vertical
/// load. Returns the depth (s sin gamma).
struct TowCase {
    double speed, rho, foil_area, cl, cd, bluff_cda, mass, buoyancy_fraction, g;
    double stiffness, length;
};

inline double tow_equilibrium_depth(const TowCase& c) {
    const double q = 0.5 * c.rho * c.speed * c.speed;
    const double horizontal = q * (c.foil_area * c.cd + c.bluff_cda);
    const double vertical = q * c.foil_area * c.cl - c.buoyancy_fraction * c.mass * c.g;
    auto residual = [&](double gamma) {
        const double T = horizontal / std::cos(gamma);
        return T * std::sin(gamma) - vertical;
    };
    double lo = 0.0, hi = 1.5707963;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? hi : lo) = mid;
    }
    const double gamma = 0.5 * (lo + hi);
    const double T = horizontal / std::cos(gamma);
    return (c.length + T / c.stiffness) * std::sin(gamma);
}

/// Distance from p to segment ab.
inline double segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    const Eigen::Vector2d ab = b - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    return (p - (a + t * ab)).norm();
}

/// Largest distance from any point of a 1 m grid over the rectangle (edges
/// included) to the polyline.
inline double max_grid_distance(double x0, double y0, double x1, double y1,
                                const std::vector<Eigen::Vector2d>& path) {
    double worst = 0.0;
    const int nx = static_cast<int>(std::floor(x1 - x0));
    const int ny = static_cast<int>(std::floor(y1 - y0));
    for (int i = 0; i <= nx + 1; ++i) {
        for (int j = 0; j <= ny + 1; ++j) {
            const Eigen::Vector2d p(std::min(x0 + i, x1), std::min(y0 + j, y1));
            double best = INFINITY;
            for (std::size_t k = 1; k < path.size(); ++k) best = std::min(best, segment_distance(p, path[k - 1], path[k]));
            worst = std::max(worst, best);
        }
    }
    return worst;
}

}  // namespace oracle
