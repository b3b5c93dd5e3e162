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

#ifndef ROLLSIM_CONTROL_HPP
#define ROLLSIM_CONTROL_HPP

#include "rollsim/energetics.hpp"

#include <limits>
#include <optional>
#include <string_view>

namespace rollsim {

/**
 * 2x4 PD gains. Row r drives motor r; columns act on the error vector
 * (psi1 err, psi2 err, phi1 err, phi2 err). Only the entries
 * (0,0), (0,2), (1,1), (1,3) may be non-zero unless dense gains are allowed.
 */
struct GainMatrices {
    Mat24 Kp = Mat24::Zero();
    Mat24 Kd = Mat24::Zero();

    static GainMatrices from_diagonal_pattern(double kp_theta1, double kp_phi1, double kp_theta2, double kp_phi2,
                                              double kd_theta1, double kd_phi1, double kd_theta2, double kd_phi2) {
        GainMatrices g;
        g.Kp << kp_theta1, 0, kp_phi1, 0,
                0, kp_theta2, 0, kp_phi2;
        g.Kd << kd_theta1, 0, kd_phi1, 0,
                0, kd_theta2, 0, kd_phi2;
        return g;
    }

    /// True when every entry outside the per-motor pattern is exactly zero.
    bool has_sparsity_pattern() const {
        auto ok = [](const Mat24& K) {
            return K(0, 1) == 0.0 && K(0, 3) == 0.0 && K(1, 0) == 0.0 && K(1, 2) == 0.0;
        };
        return ok(Kp) && ok(Kd);
    }

    bool operator==(const GainMatrices&) const = default;
};

/**
 * Sign convention of the pendulum true angle psi.
 *
 * The motor torque pair (+tau on theta, -tau on phi) does work tau * d(theta - phi).
 * With positive gains and the error measured as theta - phi, the proportional
 * pendulum channel pushes psi away from its target. DiskMinusPendulum measures
 * psi = phi - theta, which makes positive k_p_theta restoring; PendulumMinusDisk
 * keeps psi = theta - phi as printed alongside the control law.
 */
enum class PsiDefinition { DiskMinusPendulum, PendulumMinusDisk };

inline std::string_view to_string(PsiDefinition d) {
    return d == PsiDefinition::DiskMinusPendulum ? "phi-minus-theta" : "theta-minus-phi";
}

/// (psi1, psi2) of a configuration.
inline Vec2 true_angles(const Vec4& q, PsiDefinition def = PsiDefinition::DiskMinusPendulum) {
    const Vec2 rel(q[kTheta1] - q[kPhi1], q[kTheta2] - q[kPhi2]);
    return def == PsiDefinition::PendulumMinusDisk ? rel : Vec2(-rel);
}

/// Targets for the pendulum true angles and the disk angles.
struct Setpoints {
    Vec2 theta_d = Vec2::Zero();
    Vec2 phi_d = Vec2::Zero();
    Vec2 theta_rate_d = Vec2::Zero();
    Vec2 phi_rate_d = Vec2::Zero();

    /// Generalized coordinates at which every position error vanishes.
    Vec4 configuration(PsiDefinition def = PsiDefinition::DiskMinusPendulum) const {
        const Vec2 rel = def == PsiDefinition::PendulumMinusDisk ? theta_d : Vec2(-theta_d);
        return Vec4(rel[0] + phi_d[0], rel[1] + phi_d[1], phi_d[0], phi_d[1]);
    }

    bool operator==(const Setpoints&) const = default;
};

/// Velocity channel of the error: the printed law differentiates theta, not psi.
enum class RateError { ThetaRate, PsiRate };

inline std::string_view to_string(RateError r) { return r == RateError::ThetaRate ? "theta-rate" : "psi-rate"; }

struct ControlErrors {
    Vec4 e;
    Vec4 edot;
};

inline ControlErrors control_errors(const Setpoints& sp, const State& state,
                                    RateError rate = RateError::ThetaRate,
                                    PsiDefinition def = PsiDefinition::DiskMinusPendulum) {
    const Vec4& q = state.q;
    const Vec4& qd = state.qdot;
    const Vec2 psi = true_angles(q, def);
    const Vec2 rate_channel = rate == RateError::ThetaRate ? Vec2(qd[kTheta1], qd[kTheta2]) : true_angles(qd, def);
    ControlErrors out;
    out.e << psi[0] - sp.theta_d[0],
             psi[1] - sp.theta_d[1],
             q[kPhi1] - sp.phi_d[0],
             q[kPhi2] - sp.phi_d[1];
    out.edot << rate_channel[0] - sp.theta_rate_d[0],
                rate_channel[1] - sp.theta_rate_d[1],
                qd[kPhi1] - sp.phi_rate_d[0],
                qd[kPhi2] - sp.phi_rate_d[1];
    return out;
}

/// Component-wise clamp to [-bound, bound].
inline Input saturate(const Input& input, double bound) {
    if (!(bound > 0.0)) {
        throw DomainError("saturate: bound must be > 0");
    }
    return Input{input.tau.cwiseMax(-bound).cwiseMin(bound)};
}

/// u = Kp e + Kd edot, optionally clamped.
inline Input pd_control(const GainMatrices& gains, const Setpoints& sp, const State& state,
                        std::optional<double> saturation = std::nullopt,
                        RateError rate = RateError::ThetaRate,
                        PsiDefinition def = PsiDefinition::DiskMinusPendulum) {
    const auto err = control_errors(sp, state, rate, def);
    Input u{gains.Kp * err.e + gains.Kd * err.edot};
    if (saturation) u = saturate(u, *saturation);
    return u;
}

struct LyapunovSample {
    double V = 0.0;
    /// NaN until a previous sample is available.
    double Vdot = std::numeric_limits<double>::quiet_NaN();
    double energy_term = 0.0;
    double kp_term = 0.0;
    double kd_term = 0.0;

    bool has_vdot() const { return !std::isnan(Vdot); }
};

/**
 * Composite Lyapunov monitor:
 *
 *   V = 1/2 (E - E_ref)^2 + 1/2 sum_rc Kp_rc e_c^2 + sum_rc Kd_rc edot_c^2
 *
 * E_ref is the energy at rest in the setpoint configuration. The Kd term keeps
 * the unit coefficient of the printed function. Vdot is a backward difference.
 */
inline LyapunovSample lyapunov(const RobotParams& params, const GainMatrices& gains, const Setpoints& sp,
                               const State& state, const std::optional<LyapunovSample>& prev = std::nullopt,
                               double dt = 0.0, PotentialModel model = PotentialModel::PaperVerbatim,
                               RateError rate = RateError::ThetaRate,
                               PsiDefinition def = PsiDefinition::DiskMinusPendulum) {
    if (prev && !(dt > 0.0)) {
        throw DomainError("lyapunov: dt must be > 0 when a previous sample is given");
    }
    const double e_ref = potential_energy(params, sp.configuration(def), model);
    const double dE = energy(params, state, model).E - e_ref;
    const auto err = control_errors(sp, state, rate, def);
    const Eigen::RowVector4d kp_weights = gains.Kp.colwise().sum();
    const Eigen::RowVector4d kd_weights = gains.Kd.colwise().sum();

    LyapunovSample out;
    out.energy_term = 0.5 * dE * dE;
    out.kp_term = 0.5 * kp_weights.dot(err.e.cwiseAbs2());
    out.kd_term = kd_weights.dot(err.edot.cwiseAbs2());
    out.V = out.energy_term + out.kp_term + out.kd_term;
    if (prev) out.Vdot = (out.V - prev->V) / dt;
    return out;
}

}  // namespace rollsim

#endif  // ROLLSIM_CONTROL_HPP
