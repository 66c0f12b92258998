#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavecon/deployment.hpp"
#include "uavecon/patrol.hpp"
#include "uavecon/placement.hpp"
#include "uavecon/scenario.hpp"

namespace uavecon {

using nlohmann::json;

// ---- placement ----

inline void to_json(json& j, const Point3& p) {
    j = json{{"x", p.x}, {"y", p.y}, {"z", p.z}};
}

inline void from_json(const json& j, Point3& p) {
    j.at("x").get_to(p.x);
    j.at("y").get_to(p.y);
    j.at("z").get_to(p.z);
}

inline void to_json(json& j, const Profile& profile) {
    j = json{{"domain",
              {{"A", profile.domain.half_x},
               {"B", profile.domain.half_y},
               {"C", profile.domain.half_z}}},
             {"kind", profile.kind == UserKind::Facility ? "facility" : "adverse"},
             {"users", json::array()}};
    for (const auto& u : profile.users) {
        j["users"].push_back({{"x", u.location.x},
                              {"y", u.location.y},
                              {"z", u.location.z},
                              {"w", u.weight}});
    }
}

inline void from_json(const json& j, Profile& profile) {
    const auto& d = j.at("domain");
    profile.domain = Cuboid(d.at("A").get<double>(), d.at("B").get<double>(),
                            d.at("C").get<double>());
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "facility") {
        profile.kind = UserKind::Facility;
    } else if (kind == "adverse") {
        profile.kind = UserKind::Adverse;
    } else {
        throw std::invalid_argument("Profile: kind must be facility or adverse");
    }
    profile.users.clear();
    for (const auto& u : j.at("users")) {
        profile.users.push_back(
            {{u.at("x").get<double>(), u.at("y").get<double>(),
              u.at("z").get<double>()},
             u.at("w").get<double>()});
    }
    profile.validate();
}

inline void to_json(json& j, const Violation& v) {
    j = json{{"user", v.user_index},
             {"true_location", v.true_location},
             {"misreport", v.misreport},
             {"truthful_value", v.truthful_value},
             {"misreport_value", v.misreport_value}};
}

inline void from_json(const json& j, Violation& v) {
    j.at("user").get_to(v.user_index);
    j.at("true_location").get_to(v.true_location);
    j.at("misreport").get_to(v.misreport);
    j.at("truthful_value").get_to(v.truthful_value);
    j.at("misreport_value").get_to(v.misreport_value);
}

inline void to_json(json& j, const StrategyproofnessReport& r) {
    j = json{{"trials", r.trials}, {"violations", r.violations}};
}

inline void from_json(const json& j, StrategyproofnessReport& r) {
    j.at("trials").get_to(r.trials);
    r.violations = j.at("violations").get<std::vector<Violation>>();
}

// ---- deployment ----

inline void to_json(json& j, const PowerModel& p) {
    if (p.kind == PowerModel::Kind::Constant) {
        j = json{{"kind", "constant"}, {"p0", p.constant_term}};
    } else {
        j = json{{"kind", "affine_quadratic"},
                 {"a", p.constant_term},
                 {"b", p.quadratic_term}};
    }
}

inline void from_json(const json& j, PowerModel& p) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        p = PowerModel::constant(j.at("p0").get<double>());
    } else if (kind == "affine_quadratic") {
        p = PowerModel::affine_quadratic(j.at("a").get<double>(),
                                         j.at("b").get<double>());
    } else {
        throw std::invalid_argument("PowerModel: unknown kind");
    }
}

inline void to_json(json& j, const UavSpec& u) {
    j = json{{"x0", u.x0}, {"h", u.h}, {"v", u.v}, {"r", u.r},
             {"power", u.power}};
}

inline void from_json(const json& j, UavSpec& u) {
    j.at("x0").get_to(u.x0);
    j.at("h").get_to(u.h);
    j.at("v").get_to(u.v);
    j.at("r").get_to(u.r);
    u.power = j.at("power").get<PowerModel>();
}

inline void to_json(json& j, const Fleet& fleet) {
    j = json{{"beta", fleet.beta}, {"uavs", fleet.uavs}};
}

inline void from_json(const json& j, Fleet& fleet) {
    fleet = Fleet::sorted(j.at("uavs").get<std::vector<UavSpec>>(),
                          j.at("beta").get<double>());
}

inline void to_json(json& j, const Deployment& d) {
    j = json{{"max_energy", d.max_energy},
             {"total_energy", d.total_energy},
             {"covered", d.covered},
             {"uavs", json::array()}};
    for (const auto& a : d.assignments) {
        json entry{{"deployed", a.position.has_value()}, {"energy", a.energy}};
        if (a.position) entry["x"] = *a.position;
        j["uavs"].push_back(std::move(entry));
    }
}

// ---- patrol ----

inline void to_json(json& j, const CellGraph& g) {
    j = json{{"vertices", json::array()},
             {"edges", json::array()},
             {"depot", g.depot}};
    for (const auto& v : g.vertices) {
        j["vertices"].push_back({{"x", v.x}, {"y", v.y}});
    }
    for (const auto& e : g.edges) {
        j["edges"].push_back({e.u, e.v, e.length});
    }
}

inline void from_json(const json& j, CellGraph& g) {
    g.vertices.clear();
    g.edges.clear();
    for (const auto& v : j.at("vertices")) {
        g.vertices.push_back({v.at("x").get<double>(), v.at("y").get<double>()});
    }
    for (const auto& e : j.at("edges")) {
        g.edges.push_back({e.at(0).get<std::size_t>(),
                           e.at(1).get<std::size_t>(),
                           e.at(2).get<double>()});
    }
    g.depot = j.at("depot").get<std::size_t>();
    g.validate();
}

inline void to_json(json& j, const Tour& tour) {
    std::vector<std::size_t> vertices;
    if (!tour.steps.empty()) {
        vertices.push_back(tour.steps.front().from);
        for (const auto& s : tour.steps) vertices.push_back(s.to);
    }
    j = json{{"vertices", vertices}, {"length", tour.length}};
}

// ---- scenario ----

inline void to_json(json& j, const ScenarioConfig& cfg) {
    j = json{{"seed", cfg.seed},
             {"n_range", cfg.n_range},
             {"trials", cfg.trials},
             {"beta", cfg.beta},
             {"mean_speed", cfg.mean_speed},
             {"mean_radius", cfg.mean_radius},
             {"mean_altitude", cfg.mean_altitude},
             {"spread", cfg.spread},
             {"power", cfg.power},
             {"epsilon", cfg.epsilon},
             {"delta", cfg.delta}};
}

inline void from_json(const json& j, ScenarioConfig& cfg) {
    cfg = ScenarioConfig{};
    if (j.contains("seed")) j.at("seed").get_to(cfg.seed);
    if (j.contains("n_range")) j.at("n_range").get_to(cfg.n_range);
    if (j.contains("trials")) j.at("trials").get_to(cfg.trials);
    if (j.contains("beta")) j.at("beta").get_to(cfg.beta);
    if (j.contains("mean_speed")) j.at("mean_speed").get_to(cfg.mean_speed);
    if (j.contains("mean_radius")) j.at("mean_radius").get_to(cfg.mean_radius);
    if (j.contains("mean_altitude")) j.at("mean_altitude").get_to(cfg.mean_altitude);
    if (j.contains("spread")) j.at("spread").get_to(cfg.spread);
    if (j.contains("power")) cfg.power = j.at("power").get<PowerModel>();
    if (j.contains("epsilon")) j.at("epsilon").get_to(cfg.epsilon);
    if (j.contains("delta")) {
        j.at("delta").get_to(cfg.delta);
    } else {
        cfg.delta = cfg.beta / 200.0;
    }
    cfg.validate();
}

inline void to_json(json& j, const ExperimentRecord& r) {
    j = json{{"n", r.n},
             {"objective", r.objective},
             {"mean_max_energy", r.mean_max_energy},
             {"mean_total_energy", r.mean_total_energy},
             {"trials", r.trials},
             {"seed", r.seed},
             {"runtime_seconds", r.runtime_seconds}};
}

inline void from_json(const json& j, ExperimentRecord& r) {
    j.at("n").get_to(r.n);
    j.at("objective").get_to(r.objective);
    j.at("mean_max_energy").get_to(r.mean_max_energy);
    j.at("mean_total_energy").get_to(r.mean_total_energy);
    j.at("trials").get_to(r.trials);
    j.at("seed").get_to(r.seed);
    j.at("runtime_seconds").get_to(r.runtime_seconds);
}

inline void to_json(json& j, const MechanismFuzzStats& s) {
    j = json{{"profiles", s.profiles},
             {"deviations_checked", s.deviations_checked},
             {"violations", s.violations},
             {"ratio_mean", s.ratio_mean},
             {"ratio_max", s.ratio_max}};
}

inline void to_json(json& j, const MechanismSuiteReport& r) {
    j = json{{"mechanism1_weighted_median", r.median_mechanism},
             {"mechanism2_majority_corner", r.corner_mechanism},
             {"weighted_mean_counterexample_violations",
              r.mean_counterexample_violations},
             {"obnoxious_vertex_counterexample_violations",
              r.vertex_counterexample_violations}};
}

// ---- emission ----

enum class OutputFormat { Csv, Json };

/// Nine significant digits, matching the CSV contract.
inline std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

inline std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
    std::ostringstream out;
    out << "n,objective,mean_max_energy,mean_total_energy,trials,seed\n";
    for (const auto& r : records) {
        out << r.n << ',' << r.objective << ',' << format_double(r.mean_max_energy)
            << ',' << format_double(r.mean_total_energy) << ',' << r.trials << ','
            << r.seed << '\n';
    }
    return out.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

inline void emit_results(const std::vector<ExperimentRecord>& records,
                         OutputFormat format, const std::string& path) {
    if (format == OutputFormat::Csv) {
        write_text_file(path, records_to_csv(records));
    } else {
        write_text_file(path, json(records).dump(2) + "\n");
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open: " + path);
    }
    json j;
    in >> j;
    return j;
}

}  // namespace uavecon
