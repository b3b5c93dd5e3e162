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

#ifndef ROLLSIM_SIMULATE_HPP
#define ROLLSIM_SIMULATE_HPP

#include "rollsim/control.hpp"
#include "rollsim/dynamics.hpp"
#include "rollsim/integrator.hpp"
#include "rollsim/magnetics.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rollsim {

using StateVector = Eigen::Matrix<double, 8, 1>;

struct PdController {
    GainMatrices gains;
    Setpoints setpoints;
    std::optional<double> saturation;
    RateError rate = RateError::ThetaRate;
    PsiDefinition psi = PsiDefinition::DiskMinusPendulum;

    bool operator==(const PdController&) const = default;
};

/// When the controller output is computed inside a step.
enum class ControlSampling {
    ZeroOrderHold,  ///< once at the start of each step, held over all RK4 stages
    EveryStage,     ///< re-evaluated at every stage (convergence studies)
};

struct Scenario {
    std::string name = "custom";
    State initial;
    std::optional<PdController> controller;
    bool magnetics = false;
    double horizon = 5.0;
    double dt = 1e-3;
    PotentialModel potential = PotentialModel::PaperVerbatim;
    ControlSampling sampling = ControlSampling::ZeroOrderHold;
    /// Tilt of disk 2 away from upright that counts as a topple.
    double topple_threshold = kPi / 2.0;

    void validate() const {
        if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("scenario.dt must be > 0");
        if (!std::isfinite(horizon) || horizon < dt) throw ValidationError("scenario.horizon must be >= dt");
        if (!initial.finite()) throw ValidationError("scenario.y0 must be finite");
        if (!(topple_threshold > 0.0 && topple_threshold < kPi)) {
            throw ValidationError("scenario.topple_threshold must lie in (0, 180) degrees");
        }
        if (controller) {
            if (controller->saturation && !(*controller->saturation > 0.0)) {
                throw ValidationError("controller.saturation must be > 0");
            }
            if (!controller->gains.Kp.allFinite() || !controller->gains.Kd.allFinite()) {
                throw ValidationError("controller gains must be finite");
            }
        }
    }
};

/// Number of integration steps: floor(horizon / dt), tolerant of representation error in dt.
inline std::int64_t step_count(double horizon, double dt) {
    const double ratio = horizon / dt;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) return static_cast<std::int64_t>(nearest);
    return static_cast<std::int64_t>(std::floor(ratio));
}

enum class EventKind { Topple, GroundPenetration, CouplingEngaged, CouplingLost, NonFiniteState };

inline std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::Topple: return "Topple";
        case EventKind::GroundPenetration: return "GroundPenetration";
        case EventKind::CouplingEngaged: return "CouplingEngaged";
        case EventKind::CouplingLost: return "CouplingLost";
        case EventKind::NonFiniteState: return "NonFiniteState";
    }
    return "Unknown";
}

struct Event {
    EventKind kind;
    double time;
    State state;
    std::string details;
};

struct Sample {
    double t = 0.0;
    State state;
    Input input;
    Vec4 tau_gen = Vec4::Zero();
    double T = 0.0;
    double U = 0.0;
    double E = 0.0;
    double P = 0.0;
    /// NaN when the scenario has no controller.
    double V = std::numeric_limits<double>::quiet_NaN();
    double Vdot = std::numeric_limits<double>::quiet_NaN();
    double disk2_height = 0.0;
    double p_m = 0.0;
};

struct Trajectory {
    std::string scenario;
    std::vector<Sample> samples;
    std::vector<Event> events;
    bool truncated = false;

    int count(EventKind kind) const {
        int n = 0;
        for (const auto& e : events) n += e.kind == kind ? 1 : 0;
        return n;
    }

    std::optional<Event> first(EventKind kind) const {
        for (const auto& e : events) {
            if (e.kind == kind) return e;
        }
        return std::nullopt;
    }
};

/// Angle of the disk-1-to-disk-2 direction away from straight up, in [0, pi].
inline double topple_tilt(const State& state) {
    return std::abs(wrap_angle(state.q[kPhi1] + state.q[kPhi2] - kPi));
}

struct EventThresholds {
    double topple = kPi / 2.0;
    double ground = 0.0;  ///< disk 2 center height below which it penetrates; normally R2
    double coupling = 0.0;
    bool coupling_enabled = false;

    static EventThresholds for_run(const RobotParams& params, const MagneticParams& mag, const Scenario& sc) {
        return EventThresholds{sc.topple_threshold, params.R2, mag.P_max, sc.magnetics};
    }
};

/// Edge-triggered threshold crossings between two consecutive samples.
inline std::vector<Event> detect_events(const EventThresholds& th, const Sample& current, const Sample& previous) {
    std::vector<Event> out;
    auto emit = [&](EventKind kind, std::string details) {
        out.push_back(Event{kind, current.t, current.state, std::move(details)});
    };
    const double tilt_prev = topple_tilt(previous.state);
    const double tilt_now = topple_tilt(current.state);
    if (tilt_prev <= th.topple && tilt_now > th.topple) {
        emit(EventKind::Topple, "tilt " + std::to_string(rad2deg(tilt_now)) + " deg");
    }
    if (previous.disk2_height >= th.ground && current.disk2_height < th.ground) {
        emit(EventKind::GroundPenetration, "disk2 height " + std::to_string(current.disk2_height) + " m");
    }
    if (th.coupling_enabled) {
        if (previous.p_m > th.coupling && current.p_m <= th.coupling) {
            emit(EventKind::CouplingEngaged, "p_m " + std::to_string(current.p_m) + " m");
        } else if (previous.p_m <= th.coupling && current.p_m > th.coupling) {
            emit(EventKind::CouplingLost, "p_m " + std::to_string(current.p_m) + " m");
        }
    }
    return out;
}

namespace detail {

struct ClosedLoop {
    const RobotParams& params;
    const MagneticParams& mag;
    const Scenario& scenario;

    Input control(const State& s) const {
        if (!scenario.controller) return Input{};
        const auto& c = *scenario.controller;
        return pd_control(c.gains, c.setpoints, s, c.saturation, c.rate, c.psi);
    }

    Vec4 applied_torque(const State& s, const Input& u) const {
        Vec4 tau = generalized_torque(u);
        if (mag.enabled) tau += generalized_magnetic_torque(params, mag, s).Q;
        return tau;
    }

    /// y' for the 8-dim state; `held` is the zero-order-hold input, ignored in EveryStage mode.
    StateVector derivative(const StateVector& y, const Input& held) const {
        const State s = State::from_vector(y);
        const Input u = scenario.sampling == ControlSampling::EveryStage ? control(s) : held;
        StateVector dy;
        dy << s.qdot, forward_dynamics(params, s, applied_torque(s, u), scenario.potential);
        return dy;
    }
};

}  // namespace detail

/**
 * Integrates a scenario with fixed-step RK4 and records every step.
 *
 * Numeric failures never escape: the trajectory is truncated at the last
 * good sample and a NonFiniteState event is appended.
 */
inline Trajectory run(const Scenario& scenario, const RobotParams& params, const MagneticParams& mag_in) {
    scenario.validate();
    params.validate();
    MagneticParams mag = mag_in;
    mag.enabled = scenario.magnetics;
    if (mag.enabled) mag.validate();

    const detail::ClosedLoop loop{params, mag, scenario};
    const auto thresholds = EventThresholds::for_run(params, mag, scenario);
    const std::int64_t steps = step_count(scenario.horizon, scenario.dt);

    Trajectory traj;
    traj.scenario = scenario.name;
    traj.samples.reserve(static_cast<std::size_t>(steps) + 1);

    std::optional<LyapunovSample> prev_v;
    auto make_sample = [&](double t, const State& s) {
        Sample out;
        out.t = t;
        out.state = s;
        out.input = loop.control(s);
        out.tau_gen = loop.applied_torque(s, out.input);
        const auto en = energy(params, s, scenario.potential);
        out.T = en.T;
        out.U = en.U;
        out.E = en.E;
        out.P = dissipation(params, s);
        out.disk2_height = disk2_height(params, s);
        out.p_m = separation(params, s);
        if (scenario.controller) {
            const auto& c = *scenario.controller;
            const auto v = lyapunov(params, c.gains, c.setpoints, s, prev_v, scenario.dt, scenario.potential,
                                    c.rate, c.psi);
            out.V = v.V;
            out.Vdot = v.Vdot;
            prev_v = v;
        }
        return out;
    };

    traj.samples.push_back(make_sample(0.0, scenario.initial));
    StateVector y = scenario.initial.to_vector();
    for (std::int64_t k = 0; k < steps; ++k) {
        const Sample& last = traj.samples.back();
        const double t_next = static_cast<double>(k + 1) * scenario.dt;
        try {
            y = rk4_step([&](double, const StateVector& ys) { return loop.derivative(ys, last.input); }, y, last.t,
                         scenario.dt);
        } catch (const NumericError& err) {
            traj.events.push_back(Event{EventKind::NonFiniteState, t_next, last.state, err.what()});
            traj.truncated = true;
            break;
        }
        const State s = State::from_vector(y);
        if (!s.finite()) {
            traj.events.push_back(Event{EventKind::NonFiniteState, t_next, s, "state became non-finite"});
            traj.truncated = true;
            break;
        }
        traj.samples.push_back(make_sample(t_next, s));
        const auto events = detect_events(thresholds, traj.samples.back(), traj.samples[traj.samples.size() - 2]);
        traj.events.insert(traj.events.end(), events.begin(), events.end());
    }
    return traj;
}

// Shipped scenarios. Magnetics stay off in all three; the coupling model is
// exercised separately.

inline State state_from_degrees(double theta1, double theta2, double phi1, double phi2) {
    State s;
    s.q = Vec4(deg2rad(theta1), deg2rad(theta2), deg2rad(phi1), deg2rad(phi2));
    return s;
}

inline Scenario freefall_scenario() {
    Scenario sc;
    sc.name = "freefall";
    sc.initial = state_from_degrees(0.0, 30.0, 185.0, 0.0);
    sc.horizon = 5.0;
    return sc;
}

/// Setpoints that hold a configuration: psi_d = psi(s), phi_d = phi(s).
inline Setpoints hold_setpoints(const State& s, PsiDefinition def = PsiDefinition::DiskMinusPendulum) {
    Setpoints sp;
    sp.theta_d = true_angles(s.q, def);
    sp.phi_d = Vec2(s.q[kPhi1], s.q[kPhi2]);
    return sp;
}

inline Scenario balancing_scenario() {
    Scenario sc;
    sc.name = "balancing";
    sc.initial = state_from_degrees(0.0, 30.0, 180.0, 185.0);
    sc.horizon = 10.0;
    PdController pd;
    pd.gains = GainMatrices::from_diagonal_pattern(20.0, 0.3, 30.0, 0.7, 0.1, 0.5, 0.2, 0.75);
    pd.setpoints = hold_setpoints(sc.initial);
    sc.controller = pd;
    return sc;
}

/// Pendulums hold their initial true angles while disk 2 is driven to the
/// stacked configuration phi1 + phi2 = -180 deg, on the side it starts from.
inline Scenario lifting_scenario() {
    Scenario sc;
    sc.name = "lifting";
    sc.initial = state_from_degrees(0.0, 0.0, 0.0, -107.19);
    sc.horizon = 10.0;
    PdController pd;
    pd.gains = GainMatrices::from_diagonal_pattern(1.3, 0.3, 2.5, 1.8, 0.1, 0.5, 0.2, 0.35);
    pd.setpoints = hold_setpoints(sc.initial);
    pd.setpoints.phi_d[1] = deg2rad(-180.0) - sc.initial.q[kPhi1];
    sc.controller = pd;
    return sc;
}

inline const std::array<std::string_view, 3>& preset_names() {
    static const std::array<std::string_view, 3> names{"freefall", "balancing", "lifting"};
    return names;
}

inline std::optional<Scenario> builtin_preset(std::string_view name) {
    if (name == "freefall") return freefall_scenario();
    if (name == "balancing") return balancing_scenario();
    if (name == "lifting") return lifting_scenario();
    return std::nullopt;
}

}  // namespace rollsim

#endif  // ROLLSIM_SIMULATE_HPP
