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

#ifndef ROLLSIM_INTEGRATOR_HPP
#define ROLLSIM_INTEGRATOR_HPP

#include "rollsim/types.hpp"

#include <string>

namespace rollsim {

class IntegrationError : public NumericError {
public:
    IntegrationError(const std::string& what, int stage, double t) : NumericError(what), stage_(stage), t_(t) {}

    /// 1-based RK4 stage that produced the bad derivative.
    int stage() const { return stage_; }
    double time() const { return t_; }

private:
    int stage_;
    double t_;
};

/**
 * One classical Runge-Kutta step of y' = f(t, y).
 *
 * Vector is any Eigen vector type. Throws IntegrationError if a stage
 * derivative is not finite.
 */
template <typename Vector, typename Derivative>
Vector rk4_step(Derivative&& f, const Vector& y, double t, double dt) {
    if (!(dt > 0.0)) {
        throw DomainError("rk4_step: dt must be > 0");
    }
    auto stage = [&](int index, double ts, const Vector& ys) {
        Vector k = f(ts, ys);
        if (!k.allFinite()) {
            throw IntegrationError("rk4_step: non-finite derivative at stage " + std::to_string(index) +
                                       ", t = " + std::to_string(ts),
                                   index, ts);
        }
        return k;
    };
    const double half = 0.5 * dt;
    const Vector k1 = stage(1, t, y);
    const Vector k2 = stage(2, t + half, (y + half * k1).eval());
    const Vector k3 = stage(3, t + half, (y + half * k2).eval());
    const Vector k4 = stage(4, t + dt, (y + dt * k3).eval());
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace rollsim

#endif  // ROLLSIM_INTEGRATOR_HPP
