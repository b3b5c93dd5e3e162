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

#ifndef ROLLSIM_PRINTED_TERMS_HPP
#define ROLLSIM_PRINTED_TERMS_HPP

#include "rollsim/params.hpp"

namespace rollsim {

/**
 * Hand-expanded coefficient form of the equation of motion, transcribed
 * literally: A(q) qddot + x(q, qdot) + y(q) = tau.
 *
 * Nothing here feeds the simulation. The terms are compared against the
 * energy-derived M, bias and G to locate transcription errors, so suspect
 * factors such as (m_p - 1) in x_1 and the repeated delta_phi1 in x_4 are
 * kept on purpose.
 */
struct PrintedTerms {
    Mat4 A = Mat4::Zero();
    Vec4 x = Vec4::Zero();
    Vec4 y = Vec4::Zero();
};

inline PrintedTerms printed_terms(const RobotParams& p, const State& state) {
    const Vec4& q = state.q;
    const double th1 = q[kTheta1], th2 = q[kTheta2], ph1 = q[kPhi1], ph2 = q[kPhi2];
    const double t1 = state.qdot[kTheta1], t2 = state.qdot[kTheta2];
    const double d1 = state.qdot[kPhi1], d2 = state.qdot[kPhi2];
    const double mp = p.m_p, ms = p.m_s, r1 = p.r1, r2 = p.r2, R1 = p.R1, g = p.g;
    const double L = p.R1 + p.R2;
    const auto& delta = p.delta;

    const double sa = std::sin(ph1 + th1), ca = std::cos(ph1 + th1);
    const double ss = std::sin(ph1 + ph2), cs = std::cos(ph1 + ph2);
    const double sb = std::sin(ph2 + th2), cb = std::cos(ph2 + th2);
    const double c_p1_plus_t2 = std::cos(ph1 + th2);
    const double c_p1_minus_t2 = std::cos(ph1 - th2);
    const double s_p1_minus_t2 = std::sin(ph1 - th2);

    PrintedTerms out;
    auto& A = out.A;
    A(0, 0) = mp * r1 * r1 + p.I_p;
    A(0, 2) = r1 * r1 + R1 * r1 * ca;
    A(1, 1) = mp * r2 * r2 + p.I_p;
    A(1, 2) = mp * (r2 + c_p1_plus_t2 + L * r2 * cs * c_p1_plus_t2);
    A(1, 3) = mp * L * r2 * cs * c_p1_plus_t2;
    A(2, 0) = mp * (R1 * r1 * ca - R1 * L * cs) + ms * (R1 * L * cs);
    A(2, 1) = mp * L * r2 * (cb - ss) - ms * R1 * L * ss;
    A(2, 2) = ms * R1 * R1 + p.I_s + mp * (2.0 * R1 * R1 + L * L + R1 * L * cs);
    A(2, 3) = mp * (L * r2 * cs - L * c_p1_minus_t2) + ms * (L * L + R1 * L) * cs;
    A(3, 1) = mp * r2 * r2 + mp * L * r2 * cs * c_p1_minus_t2;
    A(3, 2) = (mp + ms) * L * L + mp * R1 * L * cs + mp * L * r2 * cs * c_p1_minus_t2;
    A(3, 3) = (mp + ms) * L * L + mp * r2 * r2 + p.I_s + mp * L * r2 * cs * c_p1_minus_t2;

    const double w = d1 + d2;
    out.x[0] = R1 * r1 * sa * ((mp - 1.0) * d1 * (d1 + t1)) + delta[0] * t1;
    // The printed x_2 closes an unopened bracket after its second line; that line is read as a plain summand.
    out.x[1] = -mp * (d1 * std::sin(ph1 + th2) * (d1 + t2)) + delta[1] * t2 +
               L * r2 * w * std::sin(2.0 * ph1 + ph2 + th2) * w -
               mp * (d1 * R1 * r1 * (d2 + t2) * sb + w * (d2 + t2) * L * s_p1_minus_t2);
    out.x[2] = -R1 * r1 * sa * (d1 + t1) * (d1 + t1) + mp * R1 * r1 * sa * (d1 * d1 + d1 * t1) -
               mp * w * L * r2 * (d2 + t2) * std::sin(2.0 * ph1 + ph2 - th2) -
               L * r2 * (w * w * (d2 + t2) * s_p1_minus_t2 * cs) + ms * R1 * L * ss * (d1 * d1 + d1 * d2) +
               delta[2] * d1;
    out.x[3] = -(mp + ms) * R1 * L * ss * (d1 * d1 + d1 * d2) - mp * L * r2 * ss * w * (d1 + 2.0 * d2 + t2) -
               mp * R1 * r2 * sb * w * d1 + mp * R1 * L * d1 * w * ss + mp * R1 * r2 * d1 * (d2 + t2) * sb -
               mp * L * r2 * (d2 + t2) * w * c_p1_minus_t2 * ss + delta[2] * d1;

    out.y[0] = -mp * g * (r1 * sa + L * std::cos(th1));
    out.y[1] = -mp * g * r2 * cb;
    out.y[2] = mp * r1 * g * sa - L * g * (-mp * cs + ms * ss);
    out.y[3] = -mp * g * r2 * sb + (ms - mp) * g * L * ss - mp * g * L * cs;
    return out;
}

/// Printed squared speed expansions, for comparison with |v|^2 of the velocity vectors.
struct PrintedSpeeds {
    double v_p1_sq = 0.0;
    double v_p2_sq = 0.0;
    double v_s2_sq = 0.0;
};

inline PrintedSpeeds printed_speeds(const RobotParams& p, const State& state) {
    const Vec4& q = state.q;
    const double t1 = state.qdot[kTheta1], t2 = state.qdot[kTheta2];
    const double d1 = state.qdot[kPhi1], d2 = state.qdot[kPhi2];
    const double r1 = p.r1, r2 = p.r2, R1 = p.R1, L = p.R1 + p.R2;
    const double ca = std::cos(q[kPhi1] + q[kTheta1]);
    const double cs = std::cos(q[kPhi1] + q[kPhi2]);
    const double cb = std::cos(q[kPhi2] + q[kTheta2]);
    const double c_p1_minus_t2 = std::cos(q[kPhi1] - q[kTheta2]);
    const double w = d1 + d2;

    PrintedSpeeds out;
    out.v_p1_sq = (R1 * R1 + 2.0 * R1 * r1 * ca + r1 * r1) * d1 * d1 + r1 * r1 * t1 * t1 +
                  (2.0 * R1 * r1 * ca + 2.0 * r1 * r1) * d1 * t1;
    out.v_p2_sq = d1 * d1 * R1 * R1 + w * w * L * L + r2 * r2 * (d2 + t2) * (d2 + t2) + 2.0 * d1 * R1 * w * L * cs +
                  2.0 * d1 * R1 * r2 * (d2 + t2) * cb + 2.0 * w * L * r2 * (d2 + t2) * cs * c_p1_minus_t2;
    // Literal reading of the printed line breaks, including the stray constants.
    out.v_s2_sq = R1 * R1 + L * L + 2.0 * R1 * L * cs * d1 * d1 + L * L + r2 * r2 * d2 * d2 +
                  2.0 * L * r2 * cb * d1 * d2;
    return out;
}

}  // namespace rollsim

#endif  // ROLLSIM_PRINTED_TERMS_HPP
