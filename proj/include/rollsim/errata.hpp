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

#ifndef ROLLSIM_ERRATA_HPP
#define ROLLSIM_ERRATA_HPP

#include "rollsim/dynamics.hpp"
#include "rollsim/format.hpp"
#include "rollsim/printed_terms.hpp"
#include "rollsim/sampling.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rollsim {

/// Relative deviation below which a printed entry counts as matching.
inline constexpr double kErrataMatchTolerance = 1e-6;

enum class ErrataStatus { Match, Mismatch };

inline std::string_view to_string(ErrataStatus s) { return s == ErrataStatus::Match ? "MATCH" : "MISMATCH"; }

struct ErrataEntry {
    std::string name;
    std::string group;
    /// Values at the first sampled state.
    double printed = 0.0;
    double derived = 0.0;
    double max_abs_dev = 0.0;
    double mean_abs_dev = 0.0;
    /// max_abs_dev / max(|printed|, |derived|) over all samples; 0 when both vanish.
    double rel_dev = 0.0;
    ErrataStatus status = ErrataStatus::Match;
};

struct ErrataReport {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<ErrataEntry> entries;
    std::vector<std::string> notes;

    const ErrataEntry* find(std::string_view name) const {
        for (const auto& e : entries) {
            if (e.name == name) return &e;
        }
        return nullptr;
    }

    std::vector<const ErrataEntry*> mismatches() const {
        std::vector<const ErrataEntry*> out;
        for (const auto& e : entries) {
            if (e.status == ErrataStatus::Mismatch) out.push_back(&e);
        }
        return out;
    }
};

namespace detail {

struct ErrataAccumulator {
    std::string name;
    std::string group;
    double first_printed = 0.0;
    double first_derived = 0.0;
    double max_abs = 0.0;
    double sum_abs = 0.0;
    double scale = 0.0;
    std::size_t n = 0;

    void add(double printed, double derived) {
        if (n == 0) {
            first_printed = printed;
            first_derived = derived;
        }
        const double dev = std::abs(printed - derived);
        max_abs = std::max(max_abs, dev);
        sum_abs += dev;
        scale = std::max({scale, std::abs(printed), std::abs(derived)});
        ++n;
    }

    ErrataEntry finish() const {
        ErrataEntry e;
        e.name = name;
        e.group = group;
        e.printed = first_printed;
        e.derived = first_derived;
        e.max_abs_dev = max_abs;
        e.mean_abs_dev = n > 0 ? sum_abs / static_cast<double>(n) : 0.0;
        e.rel_dev = scale > 0.0 ? max_abs / scale : 0.0;
        e.status = e.rel_dev < kErrataMatchTolerance ? ErrataStatus::Match : ErrataStatus::Mismatch;
        return e;
    }
};

}  // namespace detail

/**
 * Compares the printed coefficient form against the energy-derived dynamics
 * on `samples` random states (angles in [-2pi, 2pi], rates in [-2, 2]).
 *
 * Entries: A_ij vs M_ij, x_i vs bias_i, y_i vs G_i (paper-verbatim potential),
 * the printed squared speeds vs |v|^2, the printed r_p2 y-row vs the vector
 * sum, and the gravity difference between the two potential models.
 */
inline ErrataReport errata_compare(const RobotParams& params, std::size_t samples, std::uint64_t seed) {
    if (samples < 1) {
        throw DomainError("errata_compare: samples must be >= 1");
    }
    params.validate();
    std::vector<detail::ErrataAccumulator> acc;
    auto slot = [&](std::size_t idx, std::string name, std::string group) -> detail::ErrataAccumulator& {
        if (acc.size() <= idx) acc.resize(idx + 1);
        if (acc[idx].name.empty()) {
            acc[idx].name = std::move(name);
            acc[idx].group = std::move(group);
        }
        return acc[idx];
    };

    StateSampler sampler(seed);
    for (std::size_t n = 0; n < samples; ++n) {
        const State s = sampler.state();
        const auto printed = printed_terms(params, s);
        const auto derived = dynamics_terms(params, s, PotentialModel::PaperVerbatim);
        std::size_t idx = 0;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                slot(idx++, "a_" + std::to_string(i + 1) + std::to_string(j + 1), "mass")
                    .add(printed.A(i, j), derived.M(i, j));
            }
        }
        for (int i = 0; i < 4; ++i) {
            slot(idx++, "x_" + std::to_string(i + 1), "bias").add(printed.x[i], derived.bias[i]);
        }
        for (int i = 0; i < 4; ++i) {
            slot(idx++, "y_" + std::to_string(i + 1), "gravity").add(printed.y[i], derived.G[i]);
        }
        const KinematicFrame frame(params, s.q);
        const auto v = frame.velocities(s.qdot);
        const auto speeds = printed_speeds(params, s);
        slot(idx++, "|V_p1|^2", "kinetic").add(speeds.v_p1_sq, v.v_p1.squaredNorm());
        slot(idx++, "|V_p2|^2", "kinetic").add(speeds.v_p2_sq, v.v_p2.squaredNorm());
        slot(idx++, "|V_s2|^2", "kinetic").add(speeds.v_s2_sq, v.v_s2.squaredNorm());
        slot(idx++, "r_p2.y", "kinematics")
            .add(frame.positions(TipConvention::AsPrinted).r_p2.y(), frame.positions().r_p2.y());
        const Vec4 g_geom = gravity_vector(params, s.q, PotentialModel::GeometryConsistent);
        for (int i = 0; i < 4; ++i) {
            slot(idx++, "dU_" + std::to_string(i + 1) + " (printed U vs m g y)", "potential")
                .add(derived.G[i], g_geom[i]);
        }
    }

    ErrataReport report;
    report.samples = samples;
    report.seed = seed;
    for (const auto& a : acc) report.entries.push_back(a.finish());
    report.notes = {
        "x_1 carries a (m_p - 1) factor: a mass minus a pure number.",
        "x_3 and x_4 both end in delta_phi1 * dphi1; the derived row 4 uses delta_phi2 * dphi2.",
        "y_1 contains (R1 + R2) cos(theta1) with no matching term in U1.",
        "U2 uses (R1 + R2) sin(phi1 + phi2) for pendulum 2 while its position row implies cos; see the potential group.",
        "The Lyapunov Kd term is printed without the 1/2 factor; the monitor keeps the printed coefficient.",
    };
    return report;
}

inline std::string errata_text(const ErrataReport& report) {
    std::string out;
    out += "errata report: " + std::to_string(report.samples) + " samples, seed " + std::to_string(report.seed) + "\n";
    out += "tolerance: relative deviation < " + format_double(kErrataMatchTolerance) + "\n\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-34s %-10s %14s %14s %12s %12s %12s  %s\n", "entry", "group", "printed[0]",
                  "derived[0]", "max_abs", "mean_abs", "rel", "status");
    out += line;
    for (const auto& e : report.entries) {
        std::snprintf(line, sizeof line, "%-34s %-10s %14.6e %14.6e %12.4e %12.4e %12.4e  %s\n", e.name.c_str(),
                      e.group.c_str(), e.printed, e.derived, e.max_abs_dev, e.mean_abs_dev, e.rel_dev,
                      std::string(to_string(e.status)).c_str());
        out += line;
    }
    out += "\nnotes:\n";
    for (const auto& n : report.notes) out += "  - " + n + "\n";
    return out;
}

inline nlohmann::ordered_json errata_json(const ErrataReport& report) {
    nlohmann::ordered_json doc;
    doc["samples"] = report.samples;
    doc["seed"] = report.seed;
    doc["tolerance"] = kErrataMatchTolerance;
    auto& entries = doc["entries"];
    entries = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json item;
        item["entry"] = e.name;
        item["group"] = e.group;
        item["printed"] = e.printed;
        item["derived"] = e.derived;
        item["deviation"] = e.printed - e.derived;
        item["max_abs_dev"] = e.max_abs_dev;
        item["mean_abs_dev"] = e.mean_abs_dev;
        item["rel_dev"] = e.rel_dev;
        item["status"] = to_string(e.status);
        entries.push_back(std::move(item));
    }
    doc["notes"] = report.notes;
    return doc;
}

}  // namespace rollsim

#endif  // ROLLSIM_ERRATA_HPP
