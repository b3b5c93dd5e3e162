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

#ifndef ROLLSIM_CONFIG_HPP
#define ROLLSIM_CONFIG_HPP

/*
 * Scenario configuration documents.
 *
 * JSON with // and block comments allowed. Every section and key is optional
 * unless noted; omitted values take the defaults below. Angles are degrees
 * and angular rates degrees per second; everything else is SI.
 *
 *   {
 *     "name": "freefall",
 *     "params": { "m_p", "m_s", "I_p", "I_s", "r1", "r2", "R1", "R2", "g",
 *                 "delta": [d_theta1, d_theta2, d_phi1, d_phi2] },
 *     "magnetics": { "enabled", "B_max", "P_max", "A", "mu0" },
 *                    // B_max and P_max are required when enabled is true
 *     "controller": { "type": "none" | "pd",
 *                     "Kp": [[4], [4]], "Kd": [[4], [4]],       // required for pd
 *                     "setpoints": { "theta_d": [2], "phi_d": [2],
 *                                    "theta_rate_d": [2], "phi_rate_d": [2] },
 *                     "saturation": number | null,
 *                     "rate_error": "theta-rate" | "psi-rate",
 *                     "psi": "phi-minus-theta" | "theta-minus-phi",
 *                     "sampling": "zero-order-hold" | "every-stage",
 *                     "allow_dense_gains": false },
 *     "scenario": { "y0": [theta1, theta2, phi1, phi2, rates x4],
 *                   "horizon", "dt", "potential": "paper-verbatim" | "geometry-consistent",
 *                   "topple_threshold": 90 }
 *   }
 */

#include "rollsim/format.hpp"
#include "rollsim/simulate.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

namespace rollsim {

using Json = nlohmann::ordered_json;

/// Everything needed to execute one run.
struct RunConfig {
    Scenario scenario;
    RobotParams params;
    MagneticParams magnetics;
};

namespace detail {

inline void reject_unknown_keys(const Json& section, const std::string& where,
                                std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : section.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) throw ConfigError("unknown key '" + where + "." + key + "'");
    }
}

inline const Json& require_object(const Json& node, const std::string& where) {
    if (!node.is_object()) throw ConfigError("'" + where + "' must be an object");
    return node;
}

inline double number_at(const Json& node, const std::string& where) {
    if (!node.is_number()) throw ConfigError("'" + where + "' must be a number");
    return node.get<double>();
}

inline void read_number(const Json& section, const std::string& where, const char* key, double& out) {
    if (section.contains(key)) out = number_at(section.at(key), where + "." + key);
}

inline double require_number(const Json& section, const std::string& where, const char* key) {
    if (!section.contains(key)) throw ConfigError("missing required key '" + where + "." + key + "'");
    return number_at(section.at(key), where + "." + key);
}

template <int N>
Eigen::Matrix<double, N, 1> read_vector(const Json& node, const std::string& where) {
    if (!node.is_array() || node.size() != N) {
        throw ConfigError("'" + where + "' must be an array of " + std::to_string(N) + " numbers");
    }
    Eigen::Matrix<double, N, 1> v;
    for (int i = 0; i < N; ++i) v[i] = number_at(node[i], where + "[" + std::to_string(i) + "]");
    return v;
}

inline Mat24 read_gain_matrix(const Json& node, const std::string& where) {
    if (!node.is_array() || node.size() != 2) throw ConfigError("'" + where + "' must be a 2x4 array");
    Mat24 K;
    K.row(0) = read_vector<4>(node[0], where + "[0]").transpose();
    K.row(1) = read_vector<4>(node[1], where + "[1]").transpose();
    return K;
}

inline std::string read_string(const Json& section, const std::string& where, const char* key,
                               std::string fallback) {
    if (!section.contains(key)) return fallback;
    const auto& node = section.at(key);
    if (!node.is_string()) throw ConfigError("'" + where + "." + key + "' must be a string");
    return node.get<std::string>();
}

inline Vec2 to_radians(const Vec2& deg) { return Vec2(deg2rad(deg[0]), deg2rad(deg[1])); }

inline Json vec_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

inline Json degrees_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(rad2deg(v[i]));
    return arr;
}

}  // namespace detail

/// Robot parameters from a `params` section; omitted keys keep their defaults.
inline RobotParams load_params(const Json& section) {
    RobotParams p;
    if (section.is_null()) return p;
    detail::require_object(section, "params");
    detail::reject_unknown_keys(section, "params", {"m_p", "m_s", "I_p", "I_s", "r1", "r2", "R1", "R2", "g", "delta"});
    detail::read_number(section, "params", "m_p", p.m_p);
    detail::read_number(section, "params", "m_s", p.m_s);
    detail::read_number(section, "params", "I_p", p.I_p);
    detail::read_number(section, "params", "I_s", p.I_s);
    detail::read_number(section, "params", "r1", p.r1);
    detail::read_number(section, "params", "r2", p.r2);
    detail::read_number(section, "params", "R1", p.R1);
    detail::read_number(section, "params", "R2", p.R2);
    detail::read_number(section, "params", "g", p.g);
    if (section.contains("delta")) {
        const Vec4 d = detail::read_vector<4>(section.at("delta"), "params.delta");
        p.delta = {d[0], d[1], d[2], d[3]};
    }
    p.validate();
    return p;
}

inline Json params_to_json(const RobotParams& p) {
    Json j;
    j["m_p"] = p.m_p;
    j["m_s"] = p.m_s;
    j["I_p"] = p.I_p;
    j["I_s"] = p.I_s;
    j["r1"] = p.r1;
    j["r2"] = p.r2;
    j["R1"] = p.R1;
    j["R2"] = p.R2;
    j["g"] = p.g;
    j["delta"] = {p.delta[0], p.delta[1], p.delta[2], p.delta[3]};
    return j;
}

inline MagneticParams load_magnetics(const Json& section) {
    MagneticParams m;
    if (section.is_null()) return m;
    detail::require_object(section, "magnetics");
    detail::reject_unknown_keys(section, "magnetics", {"enabled", "B_max", "P_max", "A", "mu0"});
    if (section.contains("enabled")) {
        if (!section.at("enabled").is_boolean()) throw ConfigError("'magnetics.enabled' must be true or false");
        m.enabled = section.at("enabled").get<bool>();
    }
    if (m.enabled) {
        m.B_max = detail::require_number(section, "magnetics", "B_max");
        m.P_max = detail::require_number(section, "magnetics", "P_max");
    } else {
        detail::read_number(section, "magnetics", "B_max", m.B_max);
        detail::read_number(section, "magnetics", "P_max", m.P_max);
    }
    detail::read_number(section, "magnetics", "A", m.A);
    detail::read_number(section, "magnetics", "mu0", m.mu0);
    m.validate();
    return m;
}

inline Json magnetics_to_json(const MagneticParams& m) {
    Json j;
    j["enabled"] = m.enabled;
    j["B_max"] = m.B_max;
    j["P_max"] = m.P_max;
    j["A"] = m.A;
    j["mu0"] = m.mu0;
    return j;
}

struct ControllerConfig {
    std::optional<PdController> pd;
    ControlSampling sampling = ControlSampling::ZeroOrderHold;
};

inline ControllerConfig load_controller(const Json& section) {
    ControllerConfig out;
    if (section.is_null()) return out;
    detail::require_object(section, "controller");
    detail::reject_unknown_keys(section, "controller",
                                {"type", "Kp", "Kd", "setpoints", "saturation", "rate_error", "psi", "sampling",
                                 "allow_dense_gains"});
    const std::string type = detail::read_string(section, "controller", "type", "pd");
    const std::string sampling = detail::read_string(section, "controller", "sampling", "zero-order-hold");
    if (sampling == "zero-order-hold") {
        out.sampling = ControlSampling::ZeroOrderHold;
    } else if (sampling == "every-stage") {
        out.sampling = ControlSampling::EveryStage;
    } else {
        throw ConfigError("controller.sampling must be 'zero-order-hold' or 'every-stage'");
    }
    if (type == "none") return out;
    if (type != "pd") throw ConfigError("controller.type must be 'none' or 'pd' (got '" + type + "')");

    PdController pd;
    if (!section.contains("Kp")) throw ConfigError("missing required key 'controller.Kp'");
    if (!section.contains("Kd")) throw ConfigError("missing required key 'controller.Kd'");
    pd.gains.Kp = detail::read_gain_matrix(section.at("Kp"), "controller.Kp");
    pd.gains.Kd = detail::read_gain_matrix(section.at("Kd"), "controller.Kd");
    bool allow_dense = false;
    if (section.contains("allow_dense_gains")) {
        if (!section.at("allow_dense_gains").is_boolean()) {
            throw ConfigError("'controller.allow_dense_gains' must be true or false");
        }
        allow_dense = section.at("allow_dense_gains").get<bool>();
    }
    if (!allow_dense && !pd.gains.has_sparsity_pattern()) {
        throw ConfigError(
            "controller gains must have the per-motor pattern [[k,0,k,0],[0,k,0,k]]; set allow_dense_gains to "
            "override");
    }
    if (section.contains("setpoints")) {
        const auto& sp = detail::require_object(section.at("setpoints"), "controller.setpoints");
        detail::reject_unknown_keys(sp, "controller.setpoints", {"theta_d", "phi_d", "theta_rate_d", "phi_rate_d"});
        auto read = [&](const char* key, Vec2& dst) {
            if (sp.contains(key)) {
                dst = detail::to_radians(detail::read_vector<2>(sp.at(key), std::string("controller.setpoints.") + key));
            }
        };
        read("theta_d", pd.setpoints.theta_d);
        read("phi_d", pd.setpoints.phi_d);
        read("theta_rate_d", pd.setpoints.theta_rate_d);
        read("phi_rate_d", pd.setpoints.phi_rate_d);
    }
    if (section.contains("saturation") && !section.at("saturation").is_null()) {
        pd.saturation = detail::number_at(section.at("saturation"), "controller.saturation");
        if (!(*pd.saturation > 0.0)) throw ValidationError("controller.saturation must be > 0");
    }
    const std::string rate = detail::read_string(section, "controller", "rate_error", "theta-rate");
    if (rate == "theta-rate") {
        pd.rate = RateError::ThetaRate;
    } else if (rate == "psi-rate") {
        pd.rate = RateError::PsiRate;
    } else {
        throw ConfigError("controller.rate_error must be 'theta-rate' or 'psi-rate'");
    }
    const std::string psi = detail::read_string(section, "controller", "psi", "phi-minus-theta");
    if (psi == "phi-minus-theta") {
        pd.psi = PsiDefinition::DiskMinusPendulum;
    } else if (psi == "theta-minus-phi") {
        pd.psi = PsiDefinition::PendulumMinusDisk;
    } else {
        throw ConfigError("controller.psi must be 'phi-minus-theta' or 'theta-minus-phi'");
    }
    out.pd = pd;
    return out;
}

inline Json controller_to_json(const std::optional<PdController>& pd, ControlSampling sampling) {
    Json j;
    j["type"] = pd ? "pd" : "none";
    j["sampling"] = sampling == ControlSampling::ZeroOrderHold ? "zero-order-hold" : "every-stage";
    if (!pd) return j;
    auto gain = [](const Mat24& K) {
        return Json::array({detail::vec_json(K.row(0).transpose()), detail::vec_json(K.row(1).transpose())});
    };
    j["Kp"] = gain(pd->gains.Kp);
    j["Kd"] = gain(pd->gains.Kd);
    j["allow_dense_gains"] = !pd->gains.has_sparsity_pattern();
    j["setpoints"] = {
        {"theta_d", detail::degrees_json(pd->setpoints.theta_d)},
        {"phi_d", detail::degrees_json(pd->setpoints.phi_d)},
        {"theta_rate_d", detail::degrees_json(pd->setpoints.theta_rate_d)},
        {"phi_rate_d", detail::degrees_json(pd->setpoints.phi_rate_d)},
    };
    j["saturation"] = pd->saturation ? Json(*pd->saturation) : Json(nullptr);
    j["rate_error"] = to_string(pd->rate);
    j["psi"] = to_string(pd->psi);
    return j;
}

inline PotentialModel parse_potential(const std::string& s) {
    if (s == "paper-verbatim") return PotentialModel::PaperVerbatim;
    if (s == "geometry-consistent") return PotentialModel::GeometryConsistent;
    throw ConfigError("potential must be 'paper-verbatim' or 'geometry-consistent' (got '" + s + "')");
}

inline RunConfig load_config(const Json& doc) {
    detail::require_object(doc, "<document>");
    detail::reject_unknown_keys(doc, "<document>", {"name", "params", "magnetics", "controller", "scenario"});
    RunConfig cfg;
    cfg.params = load_params(doc.value("params", Json()));
    cfg.magnetics = load_magnetics(doc.value("magnetics", Json()));
    const auto controller = load_controller(doc.value("controller", Json()));

    Scenario& sc = cfg.scenario;
    sc.name = detail::read_string(doc, "<document>", "name", "custom");
    sc.controller = controller.pd;
    sc.sampling = controller.sampling;
    sc.magnetics = cfg.magnetics.enabled;
    const Json section = doc.value("scenario", Json::object());
    detail::require_object(section, "scenario");
    detail::reject_unknown_keys(section, "scenario", {"y0", "horizon", "dt", "potential", "topple_threshold"});
    if (section.contains("y0")) {
        const auto y0 = detail::read_vector<8>(section.at("y0"), "scenario.y0");
        StateVector y;
        for (int i = 0; i < 8; ++i) y[i] = deg2rad(y0[i]);
        sc.initial = State::from_vector(y);
    }
    detail::read_number(section, "scenario", "horizon", sc.horizon);
    detail::read_number(section, "scenario", "dt", sc.dt);
    sc.potential = parse_potential(detail::read_string(section, "scenario", "potential", "paper-verbatim"));
    if (section.contains("topple_threshold")) {
        sc.topple_threshold = deg2rad(detail::number_at(section.at("topple_threshold"), "scenario.topple_threshold"));
    }
    sc.validate();
    return cfg;
}

inline Json parse_document(const std::string& text, const std::string& origin = "<string>") {
    try {
        return Json::parse(text, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

inline RunConfig load_config_text(const std::string& text, const std::string& origin = "<string>") {
    return load_config(parse_document(text, origin));
}

inline RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_config_text(buf.str(), path.string());
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path.string(), 0) == 0) throw;
        if (dynamic_cast<const ValidationError*>(&e)) throw ValidationError(path.string() + ": " + msg);
        throw ConfigError(path.string() + ": " + msg);
    }
}

inline Json config_to_json(const RunConfig& cfg) {
    Json j;
    j["name"] = cfg.scenario.name;
    j["params"] = params_to_json(cfg.params);
    MagneticParams mag = cfg.magnetics;
    mag.enabled = cfg.scenario.magnetics;
    j["magnetics"] = magnetics_to_json(mag);
    j["controller"] = controller_to_json(cfg.scenario.controller, cfg.scenario.sampling);
    const StateVector y = cfg.scenario.initial.to_vector();
    j["scenario"] = {
        {"y0", detail::degrees_json(y)},
        {"horizon", cfg.scenario.horizon},
        {"dt", cfg.scenario.dt},
        {"potential", to_string(cfg.scenario.potential)},
        {"topple_threshold", rad2deg(cfg.scenario.topple_threshold)},
    };
    return j;
}

}  // namespace rollsim

#endif  // ROLLSIM_CONFIG_HPP
