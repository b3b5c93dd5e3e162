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

#ifndef ROLLSIM_PARAMS_HPP
#define ROLLSIM_PARAMS_HPP

#include "rollsim/types.hpp"

#include <array>
#include <string>

namespace rollsim {

/**
 * Physical parameters of the two-module rolling disk robot.
 *
 * R1, R2 are the disk radii (they carry the rolling terms R1*phi1 and the
 * contact circle R1 + R2). r1, r2 are the pendulum arm lengths. Both disks
 * share the body mass/inertia and both pendulums share the pendulum
 * mass/inertia. delta is the viscous damping per coordinate, in state order.
 */
struct RobotParams {
    double m_p = 0.262;
    double m_s = 0.70;
    double I_p = 0.1;
    double I_s = 0.1;
    double r1 = 0.06;
    double r2 = 0.06;
    double R1 = 0.065;
    double R2 = 0.065;
    double g = 9.81;
    std::array<double, 4> delta{0.02, 0.02, 0.07, 0.06};

    /// Throws ValidationError naming the first offending field.
    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!std::isfinite(v) || !(v > 0.0)) {
                throw ValidationError(std::string("params.") + name + " must be finite and > 0 (got " +
                                      std::to_string(v) + ")");
            }
        };
        positive(m_p, "m_p");
        positive(m_s, "m_s");
        positive(I_p, "I_p");
        positive(I_s, "I_s");
        positive(r1, "r1");
        positive(r2, "r2");
        positive(R1, "R1");
        positive(R2, "R2");
        positive(g, "g");
        for (std::size_t i = 0; i < delta.size(); ++i) {
            if (!std::isfinite(delta[i]) || delta[i] < 0.0) {
                throw ValidationError("params.delta[" + std::to_string(i) + "] must be finite and >= 0 (got " +
                                      std::to_string(delta[i]) + ")");
            }
        }
    }

    Vec4 damping() const { return Vec4(delta[0], delta[1], delta[2], delta[3]); }

    /// Contact circle radius between the two disk centers.
    double center_distance() const { return R1 + R2; }

    bool operator==(const RobotParams&) const = default;
};

/// Motor torque reaction acts on the pendulum and, with opposite sign, on its disk.
inline Vec4 generalized_torque(const Input& input) {
    if (!input.tau.allFinite()) {
        throw DomainError("generalized_torque: non-finite motor torque");
    }
    return Vec4(input.tau[0], input.tau[1], -input.tau[0], -input.tau[1]);
}

}  // namespace rollsim

#endif  // ROLLSIM_PARAMS_HPP
