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

#include "rollsim/params.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace rollsim;

TEST(Params, DefaultsMatchTable) {
    const RobotParams p;
    EXPECT_EQ(p.m_p, 0.262);
    EXPECT_EQ(p.m_s, 0.70);
    EXPECT_EQ(p.I_p, 0.1);
    EXPECT_EQ(p.I_s, 0.1);
    EXPECT_EQ(p.r1, 0.06);
    EXPECT_EQ(p.r2, 0.06);
    EXPECT_EQ(p.R1, 0.065);
    EXPECT_EQ(p.R2, 0.065);
    EXPECT_EQ(p.g, 9.81);
    EXPECT_EQ(p.damping(), Vec4(0.02, 0.02, 0.07, 0.06));
    EXPECT_NO_THROW(p.validate());
}

TEST(Params, ValidationNamesField) {
    RobotParams p;
    p.m_p = -1.0;
    try {
        p.validate();
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("params.m_p"), std::string::npos);
    }
    p = RobotParams{};
    p.R2 = 0.0;
    EXPECT_THROW(p.validate(), ValidationError);
    p = RobotParams{};
    p.g = std::nan("");
    EXPECT_THROW(p.validate(), ValidationError);
    p = RobotParams{};
    p.delta[3] = -0.1;
    EXPECT_THROW(p.validate(), ValidationError);
    p.delta = {0.0, 0.0, 0.0, 0.0};
    EXPECT_NO_THROW(p.validate());
}

TEST(Params, GeneralizedTorqueExamples) {
    EXPECT_EQ(generalized_torque(Input{Vec2(0, 0)}), Vec4::Zero());
    EXPECT_EQ(generalized_torque(Input{Vec2(1, 0)}), Vec4(1, 0, -1, 0));
    EXPECT_EQ(generalized_torque(Input{Vec2(0.5, -0.2)}), Vec4(0.5, -0.2, -0.5, 0.2));
    EXPECT_THROW(generalized_torque(Input{Vec2(INFINITY, 0)}), DomainError);
}

TEST(Params, GeneralizedTorqueLinearAndInternal) {
    oracle::Rng rng(11);
    for (int n = 0; n < 500; ++n) {
        const Vec2 u(rng.uniform(-5, 5), rng.uniform(-5, 5));
        const Vec2 v(rng.uniform(-5, 5), rng.uniform(-5, 5));
        const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
        const Vec4 lhs = generalized_torque(Input{a * u + b * v});
        const Vec4 rhs = a * generalized_torque(Input{u}) + b * generalized_torque(Input{v});
        EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
        const Vec4 t = generalized_torque(Input{u});
        EXPECT_EQ(t[kTheta1] + t[kPhi1], 0.0);
        EXPECT_EQ(t[kTheta2] + t[kPhi2], 0.0);
    }
}

TEST(Types, WrapAngle) {
    EXPECT_NEAR(wrap_angle(3 * kPi / 2), -kPi / 2, 1e-15);
    EXPECT_NEAR(wrap_angle(-3 * kPi / 2), kPi / 2, 1e-15);
    EXPECT_NEAR(wrap_angle(deg2rad(365)), deg2rad(5), 1e-15);
    EXPECT_NEAR(rad2deg(deg2rad(-107.19)), -107.19, 1e-12);
}

TEST(Types, StateVectorRoundTrip) {
    State s;
    s.q = Vec4(1, 2, 3, 4);
    s.qdot = Vec4(5, 6, 7, 8);
    const State back = State::from_vector(s.to_vector());
    EXPECT_EQ(back.q, s.q);
    EXPECT_EQ(back.qdot, s.qdot);
    EXPECT_TRUE(s.finite());
    s.qdot[2] = std::nan("");
    EXPECT_FALSE(s.finite());
}
