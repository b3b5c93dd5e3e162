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

#ifndef ROLLSIM_ENERGETICS_HPP
#define ROLLSIM_ENERGETICS_HPP

#include "rollsim/kinematics.hpp"

#include <array>
#include <string_view>

namespace rollsim {

/**
 * Potential energy model.
 *
 * PaperVerbatim uses the printed U1 + U2, whose pendulum-2 term carries
 * (R1 + R2) sin(phi1 + phi2). GeometryConsistent uses m*g*y of the body
 * positions instead, where that term becomes a cosine.
 */
enum class PotentialModel { PaperVerbatim, GeometryConsistent };

inline std::string_view to_string(PotentialModel m) {
    return m == PotentialModel::PaperVerbatim ? "paper-verbatim" : "geometry-consistent";
}

struct EnergyBreakdown {
    double T = 0.0;
    double U = 0.0;
    double E = 0.0;
    /// pendulum 1, disk 1, pendulum 2, disk 2 (translation + rotation each)
    std::array<double, 4> T_parts{};
    /// U1 (pendulum 1 + disk 1), U2 (pendulum 2 + disk 2)
    std::array<double, 2> U_parts{};
};

namespace detail {

inline std::array<double, 4> kinetic_parts(const KinematicFrame& frame, const Vec4& qdot) {
    const auto& p = frame.params;
    const auto v = frame.velocities(qdot);
    return {
        0.5 * p.m_p * v.v_p1.squaredNorm() + 0.5 * p.I_p * qdot[kTheta1] * qdot[kTheta1],
        0.5 * p.m_s * v.v_s1.squaredNorm() + 0.5 * p.I_s * qdot[kPhi1] * qdot[kPhi1],
        0.5 * p.m_p * v.v_p2.squaredNorm() + 0.5 * p.I_p * qdot[kTheta2] * qdot[kTheta2],
        0.5 * p.m_s * v.v_s2.squaredNorm() + 0.5 * p.I_s * qdot[kPhi2] * qdot[kPhi2],
    };
}

inline std::array<double, 2> potential_parts(const RobotParams& p, const Vec4& q, PotentialModel model) {
    const double L = p.center_distance();
    const double ca = std::cos(q[kPhi1] + q[kTheta1]);
    const double s = q[kPhi1] + q[kPhi2];
    const double cb = std::cos(q[kPhi2] + q[kTheta2]);
    const double u1 = -p.m_p * p.r1 * p.g * ca;
    const double pend2_offset = model == PotentialModel::PaperVerbatim ? L * std::sin(s) : L * std::cos(s);
    const double u2 = -p.m_p * p.g * (pend2_offset + p.r2 * cb) - p.m_s * p.g * L * std::cos(s);
    return {u1, u2};
}

}  // namespace detail

/// Kinetic energy at a precomputed configuration frame.
inline double kinetic_energy(const KinematicFrame& frame, const Vec4& qdot) {
    const auto parts = detail::kinetic_parts(frame, qdot);
    return (parts[0] + parts[1]) + (parts[2] + parts[3]);
}

inline double kinetic_energy(const RobotParams& params, const State& state) {
    return kinetic_energy(KinematicFrame(params, state.q), state.qdot);
}

inline double potential_energy(const RobotParams& params, const Vec4& q,
                               PotentialModel model = PotentialModel::PaperVerbatim) {
    const auto parts = detail::potential_parts(params, q, model);
    return parts[0] + parts[1];
}

inline double potential_energy(const RobotParams& params, const State& state,
                               PotentialModel model = PotentialModel::PaperVerbatim) {
    return potential_energy(params, state.q, model);
}

inline EnergyBreakdown energy(const RobotParams& params, const State& state,
                              PotentialModel model = PotentialModel::PaperVerbatim) {
    EnergyBreakdown out;
    out.T_parts = detail::kinetic_parts(KinematicFrame(params, state.q), state.qdot);
    out.U_parts = detail::potential_parts(params, state.q, model);
    out.T = (out.T_parts[0] + out.T_parts[1]) + (out.T_parts[2] + out.T_parts[3]);
    out.U = out.U_parts[0] + out.U_parts[1];
    out.E = out.T + out.U;
    return out;
}

/// Rayleigh dissipation function P = 1/2 sum delta_k qdot_k^2.
inline double dissipation(const RobotParams& params, const State& state) {
    const Vec4 d = params.damping();
    return 0.5 * (d.array() * state.qdot.array().square()).sum();
}

/// dP/dqdot, the viscous generalized force.
inline Vec4 dissipative_force(const RobotParams& params, const State& state) {
    return params.damping().cwiseProduct(state.qdot);
}

}  // namespace rollsim

#endif  // ROLLSIM_ENERGETICS_HPP
