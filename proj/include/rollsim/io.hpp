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

#ifndef ROLLSIM_IO_HPP
#define ROLLSIM_IO_HPP

#include "rollsim/format.hpp"
#include "rollsim/simulate.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace rollsim {

class IoError : public Error {
public:
    using Error::Error;
};

/// Trajectory CSV columns, in file order. Angles in rad, rates in rad/s.
inline constexpr std::array<std::string_view, 19> kCsvColumns{
    "t",  "theta1", "theta2", "phi1", "phi2", "dtheta1", "dtheta2", "dphi1", "dphi2",        "u1",
    "u2", "T",      "U",      "E",    "P",    "V",       "Vdot",    "disk2_height", "p_m"};

using CsvRow = std::array<double, kCsvColumns.size()>;

inline CsvRow csv_row(const Sample& s) {
    const auto& q = s.state.q;
    const auto& v = s.state.qdot;
    return {s.t,          q[0], q[1], q[2], q[3], v[0], v[1], v[2], v[3], s.input.tau[0], s.input.tau[1],
            s.T,          s.U,  s.E,  s.P,  s.V,  s.Vdot, s.disk2_height, s.p_m};
}

inline void write_csv(std::ostream& out, const Trajectory& traj) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
        if (i) out << ',';
        out << kCsvColumns[i];
    }
    out << '\n';
    for (const auto& sample : traj.samples) {
        const auto row = csv_row(sample);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
}

inline std::string csv_string(const Trajectory& traj) {
    std::ostringstream out;
    write_csv(out, traj);
    return out.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

inline std::vector<CsvRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty trajectory file");
    std::string expected;
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
        if (i) expected += ',';
        expected += kCsvColumns[i];
    }
    if (line != expected) throw IoError("unexpected CSV header: " + line);
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        CsvRow row{};
        std::size_t col = 0, start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            const auto field = std::string_view(line).substr(start, comma == std::string::npos ? line.size() - start
                                                                                                : comma - start);
            if (col >= row.size()) throw IoError("too many fields on CSV row " + std::to_string(rows.size() + 1));
            try {
                row[col++] = parse_double(field);
            } catch (const std::invalid_argument& e) {
                throw IoError(std::string(e.what()) + " on CSV row " + std::to_string(rows.size() + 1));
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (col != row.size()) throw IoError("too few fields on CSV row " + std::to_string(rows.size() + 1));
        rows.push_back(row);
    }
    return rows;
}

inline std::vector<CsvRow> read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return read_csv(in);
}

struct EventRecord {
    std::string kind;
    double time = 0.0;
};

struct RunSummary {
    std::string name;
    std::size_t rows = 0;
    StateVector final_state = StateVector::Zero();
    std::vector<EventRecord> events;
    double min_disk2_height = 0.0;
    double max_disk2_height = 0.0;
    double energy_start = 0.0;
    double energy_end = 0.0;
    /// NaN when no controller is active.
    double v_min = std::numeric_limits<double>::quiet_NaN();
    double v_max = std::numeric_limits<double>::quiet_NaN();
    double max_abs_u = 0.0;
    bool truncated = false;

    int exit_status() const { return truncated ? 4 : 0; }
};

namespace detail {

inline RunSummary summarize_rows(const std::vector<CsvRow>& rows) {
    if (rows.empty()) throw DomainError("cannot summarize an empty trajectory");
    RunSummary s;
    s.rows = rows.size();
    const auto& last = rows.back();
    for (int i = 0; i < 8; ++i) s.final_state[i] = last[1 + i];
    s.min_disk2_height = s.max_disk2_height = rows.front()[17];
    s.energy_start = rows.front()[13];
    s.energy_end = last[13];
    for (const auto& r : rows) {
        s.min_disk2_height = std::min(s.min_disk2_height, r[17]);
        s.max_disk2_height = std::max(s.max_disk2_height, r[17]);
        s.max_abs_u = std::max({s.max_abs_u, std::abs(r[9]), std::abs(r[10])});
        if (!std::isnan(r[15])) {
            s.v_min = std::isnan(s.v_min) ? r[15] : std::min(s.v_min, r[15]);
            s.v_max = std::isnan(s.v_max) ? r[15] : std::max(s.v_max, r[15]);
        }
    }
    return s;
}

}  // namespace detail

/// Summary of a trajectory. Every statistic is a function of the CSV rows, so
/// summarize_csv on the written file reproduces it exactly.
inline RunSummary summarize(const Trajectory& traj) {
    std::vector<CsvRow> rows;
    rows.reserve(traj.samples.size());
    for (const auto& s : traj.samples) rows.push_back(csv_row(s));
    RunSummary out = detail::summarize_rows(rows);
    out.name = traj.scenario;
    out.truncated = traj.truncated;
    for (const auto& e : traj.events) out.events.push_back(EventRecord{std::string(to_string(e.kind)), e.time});
    return out;
}

/// Row statistics recomputed from a CSV file; name and events are not stored there.
inline RunSummary summarize_csv(const std::vector<CsvRow>& rows) { return detail::summarize_rows(rows); }

inline std::string summary_text(const RunSummary& s) {
    std::ostringstream out;
    out << "scenario: " << s.name << '\n';
    out << "rows: " << s.rows << (s.truncated ? " (truncated)" : "") << '\n';
    out << "final state:";
    for (int i = 0; i < 8; ++i) out << ' ' << format_double(s.final_state[i]);
    out << '\n';
    out << "events:";
    if (s.events.empty()) out << " none";
    out << '\n';
    for (const auto& e : s.events) out << "  " << e.kind << " at t = " << format_double(e.time) << " s\n";
    out << "disk2 height: min " << format_double(s.min_disk2_height) << " m, max "
        << format_double(s.max_disk2_height) << " m\n";
    out << "energy: start " << format_double(s.energy_start) << " J, end " << format_double(s.energy_end) << " J\n";
    out << "lyapunov V: ";
    if (std::isnan(s.v_min)) {
        out << "n/a\n";
    } else {
        out << "min " << format_double(s.v_min) << ", max " << format_double(s.v_max) << '\n';
    }
    out << "max |u|: " << format_double(s.max_abs_u) << " N*m\n";
    out << "exit status: " << s.exit_status() << '\n';
    return out.str();
}

/// Gnuplot script that plots the angles, inputs and energies from `csv_name`.
inline std::string gnuplot_script(const std::string& csv_name, const std::string& title) {
    std::ostringstream out;
    out << "# gnuplot -p " << title << ".gp\n";
    out << "set datafile separator ','\n";
    out << "set key autotitle columnhead\n";
    out << "set xlabel 't (s)'\n";
    out << "set multiplot layout 3,1 title '" << title << "'\n";
    out << "set ylabel 'angle (rad)'\n";
    out << "plot '" << csv_name << "' using 1:2 with lines, '' using 1:3 with lines, "
        << "'' using 1:4 with lines, '' using 1:5 with lines\n";
    out << "set ylabel 'u (N*m)'\n";
    out << "plot '" << csv_name << "' using 1:10 with lines, '' using 1:11 with lines\n";
    out << "set ylabel 'energy (J)'\n";
    out << "plot '" << csv_name << "' using 1:12 with lines, '' using 1:13 with lines, "
        << "'' using 1:14 with lines\n";
    out << "unset multiplot\n";
    return out.str();
}

}  // namespace rollsim

#endif  // ROLLSIM_IO_HPP
