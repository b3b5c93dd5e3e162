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

#ifndef ROLLSIM_KINEMATICS_HPP
#define ROLLSIM_KINEMATICS_HPP

#include "rollsim/params.hpp"
#include "rollsim/types.hpp"

#include <utility>

namespace rollsim {

/// Which y-component to use for the second pendulum tip.
enum class TipConvention {
    VectorSum,  ///< r_p2 = r_s2 + r_{p2/s2}; cos(phi1 + phi2) in the y row
    AsPrinted,  ///< printed row with sin(phi1 + phi2); kept for the errata comparison only
};

struct BodyPositions {
    Vec2 r_s1, r_p1, r_s2, r_p2;
};

struct BodyVelocities {
    Vec2 v_s1, v_p1, v_s2, v_p2;
};

/// Planar Jacobians d(point)/dq of the four body points, plus angular rates.
struct BodyJacobians {
    Mat24 s1, p1, s2, p2;
};

/**
 * Trig of the three angle combinations that appear in the model, evaluated
 * once per configuration so that many velocity evaluations at the same q
 * (polarization, Jacobians) share them.
 *
 *   a = phi1 + theta1   (pendulum 1 absolute angle)
 *   s = phi1 + phi2     (direction from disk 1 center to disk 2 center)
 *   b = phi2 + theta2   (pendulum 2 angle)
 */
struct KinematicFrame {
    RobotParams params;
    Vec4 q;
    double sa, ca, ss, cs, sb, cb;

    KinematicFrame(const RobotParams& p, const Vec4& q_in) : params(p), q(q_in) {
        const double a = q[kPhi1] + q[kTheta1];
        const double s = q[kPhi1] + q[kPhi2];
        const double b = q[kPhi2] + q[kTheta2];
        sa = std::sin(a);
        ca = std::cos(a);
        ss = std::sin(s);
        cs = std::cos(s);
        sb = std::sin(b);
        cb = std::cos(b);
    }

    BodyPositions positions(TipConvention tip = TipConvention::VectorSum) const {
        const auto& p = params;
        const double L = p.center_distance();
        const double x0 = p.R1 * q[kPhi1];
        BodyPositions out;
        out.r_s1 = Vec2(x0, 0.0);
        out.r_p1 = Vec2(x0 + p.r1 * sa, -p.r1 * ca);
        out.r_s2 = Vec2(x0 + L * ss, -L * cs);
        const double y_p2 = tip == TipConvention::VectorSum ? -L * cs - p.r2 * cb : -L * ss - p.r2 * cb;
        out.r_p2 = Vec2(x0 + L * ss + p.r2 * sb, y_p2);
        return out;
    }

    BodyJacobians jacobians(TipConvention tip = TipConvention::VectorSum) const {
        const auto& p = params;
        const double L = p.center_distance();
        BodyJacobians J;
        J.s1 << 0, 0, p.R1, 0,
                0, 0, 0, 0;
        J.p1 << p.r1 * ca, 0, p.R1 + p.r1 * ca, 0,
                p.r1 * sa, 0, p.r1 * sa, 0;
        J.s2 << 0, 0, p.R1 + L * cs, L * cs,
                0, 0, L * ss, L * ss;
        J.p2 << 0, p.r2 * cb, p.R1 + L * cs, L * cs + p.r2 * cb,
                0, p.r2 * sb, L * ss, L * ss + p.r2 * sb;
        if (tip == TipConvention::AsPrinted) {
            J.p2.row(1) << 0, p.r2 * sb, -L * cs, -L * cs + p.r2 * sb;
        }
        return J;
    }

    BodyVelocities velocities(const Vec4& qdot) const {
        const auto& p = params;
        const double L = p.center_distance();
        const double w1 = qdot[kPhi1];
        const double ws = qdot[kPhi1] + qdot[kPhi2];
        const double wa = qdot[kPhi1] + qdot[kTheta1];
        const double wb = qdot[kPhi2] + qdot[kTheta2];
        BodyVelocities v;
        v.v_s1 = Vec2(p.R1 * w1, 0.0);
        v.v_p1 = Vec2(p.R1 * w1 + p.r1 * wa * ca, p.r1 * wa * sa);
        v.v_s2 = Vec2(p.R1 * w1 + L * ws * cs, L * ws * ss);
        v.v_p2 = v.v_s2 + Vec2(p.r2 * wb * cb, p.r2 * wb * sb);
        return v;
    }
};

inline BodyPositions positions(const RobotParams& params, const State& state,
                               TipConvention tip = TipConvention::VectorSum) {
    return KinematicFrame(params, state.q).positions(tip);
}

inline BodyVelocities velocities(const RobotParams& params, const State& state) {
    return KinematicFrame(params, state.q).velocities(state.qdot);
}

/// Height of disk 2's center above the ground line y = -R1.
inline double disk2_height(const RobotParams& params, const State& state) {
    return params.R1 - params.center_distance() * std::cos(state.q[kPhi1] + state.q[kPhi2]);
}

inline std::pair<Vec2, Vec2> pendulum_tips(const RobotParams& params, const State& state) {
    const auto pos = positions(params, state);
    return {pos.r_p1, pos.r_p2};
}

}  // namespace rollsim

#endif  // ROLLSIM_KINEMATICS_HPP
