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

#ifndef ROLLSIM_VALIDATE_HPP
#define ROLLSIM_VALIDATE_HPP

#include "rollsim/format.hpp"
#include "rollsim/sampling.hpp"
#include "rollsim/simulate.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rollsim {

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool conservative = false;

    bool all_passed() const {
        for (const auto& c : checks) {
            if (!c.passed) return false;
        }
        return !checks.empty();
    }
};

struct ValidationOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 7;
    /// Length of the power-balance trajectory (s).
    double horizon = 0.25;
};

namespace detail {

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

/// Per-step energy residual |dE - (qdot^T tau - 2P) dt| of a trajectory, left-point rule.
inline double max_power_residual(const Trajectory& traj, double dt) {
    double worst = 0.0;
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const Sample& a = traj.samples[i - 1];
        const Sample& b = traj.samples[i];
        const double supplied = a.state.qdot.dot(a.tau_gen) - 2.0 * a.P;
        worst = std::max(worst, std::abs((b.E - a.E) - supplied * dt));
    }
    return worst;
}

}  // namespace detail

/**
 * Fast invariant suite: mass-matrix symmetry and definiteness, quadratic-form
 * exactness, a directional gradient check of G, and energy bookkeeping on a
 * short free-fall run. With all damping zero the last check becomes an
 * energy-drift bound.
 */
inline ValidationReport run_validation(const RobotParams& params, const ValidationOptions& opt = {}) {
    params.validate();
    if (opt.samples < 1) throw DomainError("run_validation: samples must be >= 1");
    ValidationReport report;
    report.conservative = params.damping().isZero(0.0);

    StateSampler sampler(opt.seed);
    double asym = 0.0, min_eig = std::numeric_limits<double>::infinity();
    double quad_err = 0.0, grad_err = 0.0;
    for (std::size_t n = 0; n < opt.samples; ++n) {
        const State s = sampler.state();
        const Mat4 M = mass_matrix(params, s.q);
        asym = std::max(asym, (M - M.transpose()).cwiseAbs().maxCoeff() / M.cwiseAbs().maxCoeff());
        min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Mat4>(M, Eigen::EigenvaluesOnly).eigenvalues()[0]);

        const double T = kinetic_energy(params, s);
        const double quad = 0.5 * s.qdot.dot(M * s.qdot);
        if (T > 0.0) quad_err = std::max(quad_err, std::abs(quad - T) / T);

        // Five-point stencil along a random direction, independent of the step used for G.
        Vec4 d = sampler.configuration();
        d.normalize();
        const double h = 1e-3;
        auto U = [&](double x) { return potential_energy(params, Vec4(s.q + x * d)); };
        const double slope = (-U(2 * h) + 8 * U(h) - 8 * U(-h) + U(-2 * h)) / (12 * h);
        const Vec4 G = gravity_vector(params, s.q);
        grad_err = std::max(grad_err, std::abs(G.dot(d) - slope) / std::max(G.norm(), 1e-12));
    }
    report.checks.push_back({"mass matrix symmetric", asym < 1e-12, "max relative asymmetry " + detail::sci(asym)});
    report.checks.push_back({"mass matrix positive definite", min_eig > 0.0, "min eigenvalue " + detail::sci(min_eig)});
    report.checks.push_back(
        {"quadratic form reproduces T", quad_err < 1e-12, "max relative error " + detail::sci(quad_err)});
    report.checks.push_back(
        {"gravity directional derivative", grad_err < 1e-7, "max relative error " + detail::sci(grad_err)});

    Scenario sc = freefall_scenario();
    sc.horizon = opt.horizon;
    const MagneticParams mag;
    if (report.conservative) {
        sc.dt = 1e-3;
        const auto traj = run(sc, params, mag);
        double drift = 0.0;
        for (const auto& sample : traj.samples) drift = std::max(drift, std::abs(sample.E - traj.samples[0].E));
        const bool ok = !traj.truncated && drift < 1e-8;
        report.checks.push_back({"energy conserved (no damping)", ok, "max |E - E0| " + detail::sci(drift) + " J"});
    } else {
        const double dt1 = 1e-3, dt2 = 5e-4;
        sc.dt = dt1;
        const auto coarse = run(sc, params, mag);
        sc.dt = dt2;
        const auto fine = run(sc, params, mag);
        const double r1 = detail::max_power_residual(coarse, dt1);
        const double r2 = detail::max_power_residual(fine, dt2);
        const double order = std::log2(r1 / r2);
        const bool ok = !coarse.truncated && !fine.truncated && order >= 1.8;
        report.checks.push_back({"power balance", ok,
                                 "residual " + detail::sci(r1) + " -> " + detail::sci(r2) + ", order " +
                                     detail::sci(order)});
    }
    return report;
}

inline std::string validation_text(const ValidationReport& report) {
    std::string out;
    if (report.conservative) out += "damping is zero: conservative mode\n";
    for (const auto& c : report.checks) {
        out += std::string(c.passed ? "PASS" : "FAIL") + "  " + c.name + "  (" + c.detail + ")\n";
    }
    out += report.all_passed() ? "all checks passed\n" : "some checks failed\n";
    return out;
}

}  // namespace rollsim

#endif  // ROLLSIM_VALIDATE_HPP
