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

#include "rollsim/control.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace rollsim;

namespace {

GainMatrices balancing_gains() {
    return GainMatrices::from_diagonal_pattern(20.0, 0.3, 30.0, 0.7, 0.1, 0.5, 0.2, 0.75);
}

/// State whose errors are exactly (e, edot) under the default convention and zero setpoints.
State state_with_errors(const Vec4& e, const Vec4& edot) {
    State s;
    s.q[kPhi1] = e[2];
    s.q[kPhi2] = e[3];
    s.q[kTheta1] = e[2] - e[0];
    s.q[kTheta2] = e[3] - e[1];
    s.qdot = Vec4(edot[0], edot[1], edot[2], edot[3]);
    return s;
}

}  // namespace

TEST(Control, ZeroAtSetpoint) {
    const State s{Vec4(0.3, -0.2, 1.0, 2.0), Vec4::Zero()};
    Setpoints sp;
    sp.theta_d = true_angles(s.q);
    sp.phi_d = Vec2(1.0, 2.0);
    const Input u = pd_control(balancing_gains(), sp, s);
    EXPECT_EQ(u.tau, Vec2::Zero());
    EXPECT_LE((sp.configuration() - s.q).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Control, ProportionalExample) {
    const Input u = pd_control(balancing_gains(), Setpoints{}, state_with_errors(Vec4(1, 0, 0, 0), Vec4::Zero()));
    EXPECT_NEAR(u.tau[0], 20.0, 1e-15);
    EXPECT_EQ(u.tau[1], 0.0);
}

TEST(Control, LinearityAndZeroGains) {
    oracle::Rng rng(1);
    for (int n = 0; n < 300; ++n) {
        const Vec4 e = rng.vec4(-1, 1), ed = rng.vec4(-1, 1);
        const Input u1 = pd_control(balancing_gains(), Setpoints{}, state_with_errors(e, ed));
        const Input u2 = pd_control(balancing_gains(), Setpoints{}, state_with_errors(2 * e, 2 * ed));
        EXPECT_LE((u2.tau - 2 * u1.tau).norm(), 1e-12);
        EXPECT_EQ(pd_control(GainMatrices{}, Setpoints{}, state_with_errors(e, ed)).tau, Vec2::Zero());
        const auto err = control_errors(Setpoints{}, state_with_errors(e, ed));
        EXPECT_LE((err.e - e).norm(), 1e-15);
        EXPECT_EQ(err.edot, ed);
    }
}

TEST(Control, PsiConventions) {
    const Vec4 q(0.5, 0.25, 2.0, 1.0);
    EXPECT_EQ(true_angles(q), Vec2(1.5, 0.75));
    EXPECT_EQ(true_angles(q, PsiDefinition::PendulumMinusDisk), Vec2(-1.5, -0.75));
    Setpoints sp;
    sp.theta_d = Vec2(0.3, -0.4);
    sp.phi_d = Vec2(1.0, 2.0);
    for (auto def : {PsiDefinition::DiskMinusPendulum, PsiDefinition::PendulumMinusDisk}) {
        EXPECT_LE((true_angles(sp.configuration(def), def) - sp.theta_d).norm(), 1e-15);
    }
    EXPECT_EQ(to_string(PsiDefinition::DiskMinusPendulum), "phi-minus-theta");
}

TEST(Control, PsiRateVariant) {
    const State s{Vec4::Zero(), Vec4(1.0, 2.0, 0.5, 0.25)};
    const auto theta = control_errors(Setpoints{}, s, RateError::ThetaRate);
    const auto psi = control_errors(Setpoints{}, s, RateError::PsiRate);
    EXPECT_EQ(theta.edot, Vec4(1.0, 2.0, 0.5, 0.25));
    EXPECT_EQ(psi.edot, Vec4(-0.5, -1.75, 0.5, 0.25));
}

TEST(Control, Saturation) {
    EXPECT_EQ(saturate(Input{Vec2(0.5, -0.2)}, 1.0).tau, Vec2(0.5, -0.2));
    EXPECT_EQ(saturate(Input{Vec2(5, -7)}, 1.0).tau, Vec2(1, -1));
    EXPECT_THROW(saturate(Input{}, 0.0), DomainError);
    oracle::Rng rng(2);
    for (int n = 0; n < 500; ++n) {
        const Input u{Vec2(rng.uniform(-10, 10), rng.uniform(-10, 10))};
        const double M = rng.uniform(0.01, 5);
        const Input s = saturate(u, M);
        EXPECT_EQ(saturate(s, M).tau, s.tau);
        EXPECT_LE(s.tau.cwiseAbs().maxCoeff(), M);
        for (int i = 0; i < 2; ++i) EXPECT_GE(s.tau[i] * u.tau[i], 0.0);
    }
    const Input clamped = pd_control(balancing_gains(), Setpoints{}, state_with_errors(Vec4(1, 1, 0, 0), Vec4::Zero()), 2.0);
    EXPECT_EQ(clamped.tau, Vec2(2.0, 2.0));
}

TEST(Control, SparsityPattern) {
    auto g = balancing_gains();
    EXPECT_TRUE(g.has_sparsity_pattern());
    g.Kd(1, 0) = 0.1;
    EXPECT_FALSE(g.has_sparsity_pattern());
}

TEST(Lyapunov, ZeroAtRestingSetpoint) {
    const RobotParams p;
    Setpoints sp;
    sp.theta_d = Vec2(0.2, -0.3);
    sp.phi_d = Vec2(kPi, 0.1);
    const State s{sp.configuration(), Vec4::Zero()};
    const auto v = lyapunov(p, balancing_gains(), sp, s);
    EXPECT_NEAR(v.V, 0.0, 1e-28);
    EXPECT_FALSE(v.has_vdot());
}

TEST(Lyapunov, TermsAndBackwardDifference) {
    const RobotParams p;
    const auto g = balancing_gains();
    const State s = state_with_errors(Vec4(0.1, -0.2, 0.3, 0.05), Vec4(0.5, 0.1, -0.2, 0.4));
    const auto v = lyapunov(p, g, Setpoints{}, s);
    const double E = energy(p, s).E - potential_energy(p, Vec4::Zero());
    EXPECT_NEAR(v.energy_term, 0.5 * E * E, 1e-15);
    EXPECT_NEAR(v.kp_term, 0.5 * (20 * 0.01 + 30 * 0.04 + 0.3 * 0.09 + 0.7 * 0.0025), 1e-15);
    EXPECT_NEAR(v.kd_term, 0.1 * 0.25 + 0.2 * 0.01 + 0.5 * 0.04 + 0.75 * 0.16, 1e-15);
    EXPECT_NEAR(v.V, v.energy_term + v.kp_term + v.kd_term, 1e-15);
    EXPECT_GE(v.V, 0.0);
    const auto next = lyapunov(p, g, Setpoints{}, s, v, 0.01);
    EXPECT_EQ(next.Vdot, 0.0);
    EXPECT_THROW(lyapunov(p, g, Setpoints{}, s, v, 0.0), DomainError);
}
