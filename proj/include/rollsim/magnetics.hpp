/*
 Copyright 2026 The rollsim Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef ROLLSIM_MAGNETICS_HPP
#define ROLLSIM_MAGNETICS_HPP

#include "rollsim/kinematics.hpp"

namespace rollsim {

/**
 * Linear flux coupling between the pendulum-tip magnets.
 *
 * B_max and P_max come from field measurements of a specific magnet array and
 * have no canonical value; the defaults here are placeholders so that a
 * magnetics section can be enabled without further edits.
 */
struct MagneticParams {
    bool enabled = false;
    double B_max = 0.05;   // T, placeholder
    double P_max = 0.02;   // m, placeholder
    double A = 0.0025;     // m^2
    double mu0 = 1.257e-6; // T*m/A

    void validate() const {
        if (!std::isfinite(B_max) || B_max < 0.0) throw ValidationError("magnetics.B_max must be >= 0");
        if (!std::isfinite(P_max) || !(P_max > 0.0)) throw ValidationError("magnetics.P_max must be > 0");
        if (!std::isfinite(A) || !(A > 0.0)) throw ValidationError("magnetics.A must be > 0");
        if (!std::isfinite(mu0) || !(mu0 > 0.0)) throw ValidationError("magnetics.mu0 must be > 0");
    }

    bool operator==(const MagneticParams&) const = default;
};

/// Distance between the two pendulum tips.
inline double separation(const RobotParams& params, const State& state) {
    const auto [p1, p2] = pendulum_tips(params, state);
    return (p2 - p1).norm();
}

inline double flux_density(const MagneticParams& mag, double p_m) {
    if (!(p_m >= 0.0)) {
        throw DomainError("flux_density: separation must be >= 0");
    }
    if (p_m > mag.P_max) return 0.0;
    return mag.B_max * (1.0 - p_m / mag.P_max);
}

/// Attractive force magnitude F = B^2 A / (2 mu0).
inline double magnetic_force(const MagneticParams& mag, double B) {
    return B * B * mag.A / (2.0 * mag.mu0);
}

/// Potential whose negative gradient along p_m is the attractive force; zero beyond P_max.
inline double magnetic_potential(const MagneticParams& mag, double p_m) {
    if (p_m >= mag.P_max) return 0.0;
    const double x = 1.0 - p_m / mag.P_max;
    return -mag.B_max * mag.B_max * mag.A / (2.0 * mag.mu0) * mag.P_max * x * x * x / 3.0;
}

struct MagneticTorque {
    Vec4 Q = Vec4::Zero();
    double p_m = 0.0;
    double force = 0.0;
    /// Tips coincide; force direction is undefined and Q is zero.
    bool degenerate = false;
};

/**
 * Generalized force of the tip attraction by virtual work:
 * Q = J_p1^T (F u) + J_p2^T (-F u), u the unit vector from tip 1 to tip 2.
 */
inline MagneticTorque generalized_magnetic_torque(const RobotParams& params, const MagneticParams& mag,
                                                  const State& state) {
    MagneticTorque out;
    const KinematicFrame frame(params, state.q);
    const auto pos = frame.positions();
    const Vec2 d = pos.r_p2 - pos.r_p1;
    out.p_m = d.norm();
    if (!mag.enabled || out.p_m > mag.P_max) return out;
    out.force = magnetic_force(mag, flux_density(mag, out.p_m));
    if (out.p_m == 0.0) {
        out.degenerate = true;
        return out;
    }
    const Vec2 f1 = out.force * d / out.p_m;
    const auto J = frame.jacobians();
    out.Q = J.p1.transpose() * f1 - J.p2.transpose() * f1;
    return out;
}

}  // namespace rollsim

#endif  // ROLLSIM_MAGNETICS_HPP
