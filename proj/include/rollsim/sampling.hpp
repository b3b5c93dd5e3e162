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

#ifndef ROLLSIM_SAMPLING_HPP
#define ROLLSIM_SAMPLING_HPP

#include "rollsim/types.hpp"

#include <cstdint>
#include <random>

namespace rollsim {

/// Seeded uniform state generator. The mapping from engine bits to doubles is
/// fixed here (not left to std::uniform_real_distribution) so reports are
/// reproducible across standard libraries.
class StateSampler {
public:
    explicit StateSampler(std::uint64_t seed, double angle_range = 2.0 * kPi, double rate_range = 2.0)
        : engine_(seed), angle_range_(angle_range), rate_range_(rate_range) {}

    double uniform(double lo, double hi) {
        const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }

    Vec4 configuration() {
        Vec4 q;
        for (int i = 0; i < 4; ++i) q[i] = uniform(-angle_range_, angle_range_);
        return q;
    }

    State state() {
        State s;
        s.q = configuration();
        for (int i = 0; i < 4; ++i) s.qdot[i] = uniform(-rate_range_, rate_range_);
        return s;
    }

private:
    std::mt19937_64 engine_;
    double angle_range_;
    double rate_range_;
};

}  // namespace rollsim

#endif  // ROLLSIM_SAMPLING_HPP
