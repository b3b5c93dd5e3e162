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

// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include "rollsim/rollsim.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace rollsim;

namespace {

const std::filesystem::path kPresetDir = ROLLSIM_PRESET_DIR;

// Frozen from the first oracle run of the lifting preset at dt = 1e-3.
constexpr double kLiftMargin = 0.016649135025557468;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

RunConfig preset(const std::string& name) { return load_config_file(kPresetDir / (name + ".json")); }

std::vector<State> random_states(std::size_t n, std::uint64_t seed) {
    oracle::Rng rng(seed);
    std::vector<State> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(State{rng.vec4(-2 * kPi, 2 * kPi), rng.vec4(-2, 2)});
    return out;
}

Outcome mass_matrix_properties() {
    const auto t0 = std::chrono::steady_clock::now();
    const RobotParams p;
    double asym = 0.0, min_eig = INFINITY;
    for (const auto& s : random_states(10000, 101)) {
        const Mat4 M = mass_matrix(p, s.q);
        asym = std::max(asym, (M - M.transpose()).cwiseAbs().maxCoeff());
        min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Mat4>(M, Eigen::EigenvaluesOnly).eigenvalues()[0]);
    }
    const double secs = seconds_since(t0);
    return {asym < 1e-12 && min_eig > 0.0 && secs < 5.0,
            "max asymmetry " + fmt("%.2e", asym) + ", min eigenvalue " + fmt("%.4e", min_eig) + ", " +
                fmt("%.2f s", secs)};
}

Outcome quadratic_form() {
    const RobotParams p;
    double worst = 0.0;
    for (const auto& s : random_states(10000, 102)) {
        const double T = kinetic_energy(p, s);
        const double quad = 0.5 * s.qdot.dot(mass_matrix(p, s.q) * s.qdot);
        worst = std::max(worst, std::abs(quad - T) / T);
    }
    return {worst < 1e-12, "max relative error " + fmt("%.2e", worst)};
}

Outcome gravity_gradient() {
    const RobotParams p;
    const oracle::Params op;
    double worst = 0.0;
    for (const auto& s : random_states(1000, 103)) {
        const Vec4 ref = oracle::printed_gravity(op, s.q);
        worst = std::max(worst, (gravity_vector(p, s.q) - ref).norm() / ref.norm());
    }
    return {worst < 1e-8, "max relative error " + fmt("%.2e", worst)};
}

double max_power_residual(const Trajectory& traj, double dt) {
    double worst = 0.0;
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const Sample& a = traj.samples[i - 1];
        const Sample& b = traj.samples[i];
        const double supplied = a.state.qdot.dot(a.tau_gen) - 2.0 * a.P;
        worst = std::max(worst, std::abs((b.E - a.E) - supplied * dt));
    }
    return worst;
}

Outcome power_balance() {
    auto cfg = preset("freefall");
    std::vector<double> residuals;
    for (double dt : {1e-3, 5e-4, 2.5e-4}) {
        cfg.scenario.dt = dt;
        residuals.push_back(max_power_residual(run(cfg.scenario, cfg.params, cfg.magnetics), dt));
    }
    const double o1 = std::log2(residuals[0] / residuals[1]);
    const double o2 = std::log2(residuals[1] / residuals[2]);
    return {std::min(o1, o2) >= 1.8, "residuals " + fmt("%.3e", residuals[0]) + " / " + fmt("%.3e", residuals[1]) +
                                         " / " + fmt("%.3e", residuals[2]) + ", orders " + fmt("%.3f", o1) + ", " +
                                         fmt("%.3f", o2)};
}

Outcome integrator_order() {
    auto cfg = preset("freefall");
    cfg.params.delta = {0, 0, 0, 0};
    cfg.scenario.horizon = 1.0;
    std::vector<Vec4> q;
    for (double dt : {2e-2, 1e-2, 5e-3, 2.5e-3}) {
        cfg.scenario.dt = dt;
        const auto traj = run(cfg.scenario, cfg.params, cfg.magnetics);
        q.push_back(traj.samples.back().state.q);
    }
    const double d1 = (q[0] - q[1]).cwiseAbs().maxCoeff();
    const double d2 = (q[1] - q[2]).cwiseAbs().maxCoeff();
    const double d3 = (q[2] - q[3]).cwiseAbs().maxCoeff();
    const double o1 = std::log2(d1 / d2), o2 = std::log2(d2 / d3);
    const bool ok = std::abs(o1 - 4.0) <= 0.3 && std::abs(o2 - 4.0) <= 0.3;
    return {ok, "differences " + fmt("%.3e", d1) + " / " + fmt("%.3e", d2) + " / " + fmt("%.3e", d3) + ", orders " +
                    fmt("%.3f", o1) + ", " + fmt("%.3f", o2)};
}

Outcome free_fall() {
    const auto cfg = preset("freefall");
    const auto t0 = std::chrono::steady_clock::now();
    const auto traj = run(cfg.scenario, cfg.params, cfg.magnetics);
    const double secs = seconds_since(t0);
    double rise = -INFINITY;
    for (std::size_t k = 1; k < traj.samples.size(); ++k) {
        rise = std::max(rise, traj.samples[k].E - traj.samples[k - 1].E);
    }
    const auto topple = traj.first(EventKind::Topple);
    const bool ok = topple && topple->time <= cfg.scenario.horizon && rise <= 1e-9 && secs < 1.0 &&
                    !cfg.scenario.controller && !cfg.scenario.magnetics;
    return {ok, "topple at " + (topple ? fmt("%.3f s", topple->time) : std::string("never")) +
                    ", max per-step dE " + fmt("%.2e J", rise) + ", " + fmt("%.3f s", secs)};
}

Outcome balancing() {
    const auto cfg = preset("balancing");
    const auto t0 = std::chrono::steady_clock::now();
    const auto traj = run(cfg.scenario, cfg.params, cfg.magnetics);
    const double secs = seconds_since(t0);
    bool finite = !traj.truncated;
    double max_u = 0.0;
    for (const auto& s : traj.samples) {
        finite = finite && s.state.finite();
        max_u = std::max(max_u, s.input.tau.cwiseAbs().maxCoeff());
    }
    const bool ok = finite && traj.count(EventKind::Topple) == 0 && std::isfinite(max_u) &&
                    traj.samples.size() == 10001 && secs < 1.0;
    return {ok, "no topple over " + fmt("%.0f s", cfg.scenario.horizon) + ", max |u| " + fmt("%.4f N*m", max_u) +
                    ", initial tilt " + fmt("%.1f deg", rad2deg(topple_tilt(cfg.scenario.initial))) + ", " +
                    fmt("%.3f s", secs)};
}

Outcome lifting() {
    const auto cfg = preset("lifting");
    const auto t0 = std::chrono::steady_clock::now();
    const auto traj = run(cfg.scenario, cfg.params, cfg.magnetics);
    const double secs = seconds_since(t0);
    const auto topple = traj.first(EventKind::Topple);
    if (!topple) return {false, "no topple within the horizon"};
    const double h0 = traj.samples.front().disk2_height;
    double peak = h0;
    for (const auto& s : traj.samples) {
        if (s.t <= topple->time) peak = std::max(peak, s.disk2_height);
    }
    const double margin = peak - h0;
    const bool ok = std::abs(h0 - 0.1034) < 5e-5 && margin > 0.0 && std::abs(margin / kLiftMargin - 1.0) <= 0.05 &&
                    secs < 1.0;
    return {ok, "initial height " + fmt("%.4f m", h0) + ", margin " + fmt("%.5f m", margin) + " (frozen " +
                    fmt("%.5f", kLiftMargin) + "), topple at " + fmt("%.3f s", topple->time) + ", " +
                    fmt("%.3f s", secs)};
}

Outcome magnetics() {
    MagneticParams m;
    m.enabled = true;
    m.B_max = 0.2;
    m.P_max = 0.1;
    bool ok = true;
    // Piecewise linear and continuous: zero beyond P_max, slope -B_max/P_max below it.
    for (int i = 0; i <= 1000; ++i) {
        const double p = 2.0 * m.P_max * i / 1000.0;
        const double expect = p <= m.P_max ? m.B_max * (1.0 - p / m.P_max) : 0.0;
        ok = ok && std::abs(flux_density(m, p) - expect) <= 1e-15;
    }
    const double gap = std::abs(flux_density(m, m.P_max * (1 + 1e-12)) - flux_density(m, m.P_max * (1 - 1e-12)));
    ok = ok && gap < 1e-12;
    oracle::Rng rng(104);
    for (int i = 0; i < 1000; ++i) {
        const double B = rng.uniform(0, 2);
        ok = ok && magnetic_force(m, 2 * B) == 4 * magnetic_force(m, B);
    }
    const RobotParams p;
    const double h = 1e-4;
    double worst = 0.0;
    int states = 0;
    while (states < 1000) {
        const State s{rng.vec4(-kPi, kPi), rng.vec4(-2, 2)};
        if (separation(p, s) >= m.P_max) continue;
        ++states;
        const auto res = generalized_magnetic_torque(p, m, s);
        auto sep = [&](double x) { return separation(p, State{s.q + x * s.qdot, s.qdot}); };
        const double pdot = (-sep(2 * h) + 8 * sep(h) - 8 * sep(-h) + sep(-2 * h)) / (12 * h);
        const double ref = -res.force * pdot;
        worst = std::max(worst, std::abs(res.Q.dot(s.qdot) - ref) / std::max(std::abs(ref), 1e-6 * res.force));
    }
    ok = ok && worst < 1e-6;
    return {ok, "continuity gap " + fmt("%.1e", gap) + ", virtual-work relative error " + fmt("%.2e", worst)};
}

Outcome errata() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto a = errata_compare(RobotParams{}, 1000, 42);
    const double secs = seconds_since(t0);
    const auto b = errata_compare(RobotParams{}, 1000, 42);
    const bool same = errata_json(a).dump() == errata_json(b).dump() && errata_text(a) == errata_text(b);
    const bool ok = same && a.find("a_11")->status == ErrataStatus::Match &&
                    a.find("a_22")->status == ErrataStatus::Match && a.find("x_1")->status == ErrataStatus::Mismatch &&
                    secs < 5.0;
    return {ok, std::to_string(a.mismatches().size()) + " of " + std::to_string(a.entries.size()) +
                    " entries mismatch, x_1 rel dev " + fmt("%.3f", a.find("x_1")->rel_dev) + ", " +
                    fmt("%.2f s", secs)};
}

Outcome determinism() {
    bool ok = true;
    std::string detail;
    for (auto name : preset_names()) {
        const auto cfg = preset(std::string(name));
        const auto a = csv_string(run(cfg.scenario, cfg.params, cfg.magnetics));
        const auto b = csv_string(run(cfg.scenario, cfg.params, cfg.magnetics));
        ok = ok && a == b;
        detail += std::string(detail.empty() ? "" : ", ") + std::string(name) + " " + std::to_string(a.size()) +
                  " bytes";
    }
    return {ok, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"mass matrix symmetric and positive definite", mass_matrix_properties},
        {"quadratic form reproduces kinetic energy", quadratic_form},
        {"gravity gradient matches analytic derivative", gravity_gradient},
        {"power balance residual is second order", power_balance},
        {"RK4 self-convergence is fourth order", integrator_order},
        {"free fall topples, energy non-increasing", free_fall},
        {"balancing stays finite without topple", balancing},
        {"lifting raises disk 2 before toppling", lifting},
        {"magnetic model properties", magnetics},
        {"errata report", errata},
        {"bit-identical CSV across runs", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        failed += out.pass ? 0 : 1;
        std::printf("%s %2zu  %s: %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    out.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
