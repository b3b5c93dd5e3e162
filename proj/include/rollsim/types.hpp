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

#ifndef ROLLSIM_TYPES_HPP
#define ROLLSIM_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rollsim {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Mat24 = Eigen::Matrix<double, 2, 4>;

inline constexpr double kPi = std::numbers::pi;

/// Generalized coordinate ordering used everywhere: (theta1, theta2, phi1, phi2).
enum Coord : int { kTheta1 = 0, kTheta2 = 1, kPhi1 = 2, kPhi2 = 3 };

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an angle into [-pi, pi]. Only used for reporting; states are stored unwrapped.
inline double wrap_angle(double a) { return std::remainder(a, 2.0 * kPi); }

// Error hierarchy. Each maps onto one CLI exit status.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ValidationError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

/// Generalized state: angles stay unwrapped because rolling translation depends on total rotation.
struct State {
    Vec4 q = Vec4::Zero();
    Vec4 qdot = Vec4::Zero();

    bool finite() const { return q.allFinite() && qdot.allFinite(); }

    static State from_vector(const Eigen::Matrix<double, 8, 1>& y) {
        return State{y.head<4>(), y.tail<4>()};
    }

    Eigen::Matrix<double, 8, 1> to_vector() const {
        Eigen::Matrix<double, 8, 1> y;
        y << q, qdot;
        return y;
    }
};

/// Motor torques (tau1, tau2) in N*m.
struct Input {
    Vec2 tau = Vec2::Zero();
};

}  // namespace rollsim

#endif  // ROLLSIM_TYPES_HPP
