#include "magline/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "magline/errors.hpp"

namespace magline {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << kTrajectoryCsvHeader << '\n';
    for (const TrajectorySample& s : tr) {
        os << format_double(s.t) << ',' << format_double(s.pos.x) << ','
           << format_double(s.pos.y) << ',' << format_double(s.pos.z) << ','
           << format_double(s.vel.x) << ',' << format_double(s.vel.y) << ','
           << format_double(s.vel.z) << ',' << format_double(s.speed_drift) << ','
           << format_double(s.p0_drift) << ',' << format_double(s.q0_drift) << '\n';
    }
}

namespace {

/// Radius band the case confines the motion to, when one exists.
std::optional<std::array<double, 2>> rho_band(const CaseTag& tag) {
    switch (tag.kind) {
    case CaseKind::HelixCaseII:
        return std::array<double, 2>{tag.inv.rho0, tag.inv.rho0};
    case CaseKind::PlanarBounded:
    case CaseKind::PlanarSech:
    case CaseKind::PlanarAnnulus:
    case CaseKind::GeneralElliptic: {
        std::vector<double> pos;
        for (int i = 0; i < tag.cubic.n_real; ++i)
            if (tag.cubic.roots[i] > kEpsAxis) pos.push_back(tag.cubic.roots[i]);
        if (pos.size() == 2)
            return std::array<double, 2>{std::sqrt(pos[0]), std::sqrt(pos[1])};
        if (pos.size() == 1) return std::array<double, 2>{0.0, std::sqrt(pos[0])};
        return std::nullopt;
    }
    default:
        return std::nullopt;
    }
}

bool is_rotational_kind(CaseKind k) { return k != CaseKind::ClassicalField; }

ordered_json case_to_json(const CaseTag& tag) {
    ordered_json j;
    j["case"] = {{"kind", to_string(tag.kind)},
                 {"orientation", tag.orientation},
                 {"strength", tag.strength},
                 {"reason", tag.reason}};
    if (is_rotational_kind(tag.kind)) {
        j["invariants"] = {{"p0", tag.inv.p0},
                           {"q0", tag.inv.q0},
                           {"rho0", tag.inv.rho0},
                           {"phi0", tag.inv.phi0},
                           {"z0", tag.inv.z0}};
        std::vector<double> roots(tag.cubic.roots.begin(),
                                  tag.cubic.roots.begin() + tag.cubic.n_real);
        j["cubic"] = {{"b", tag.cubic.b},
                      {"c", tag.cubic.c},
                      {"d", tag.cubic.d},
                      {"delta", tag.cubic.delta},
                      {"n_real", tag.cubic.n_real},
                      {"roots", roots}};
        if (auto band = rho_band(tag))
            j["admissible_rho"] = {(*band)[0], (*band)[1]};
        else
            j["admissible_rho"] = nullptr;
    } else {
        j["invariants"] = nullptr;
        j["cubic"] = nullptr;
        j["admissible_rho"] = nullptr;
    }
    return j;
}

ordered_json config_to_json(const RunConfig& cfg) {
    return ordered_json{{"command", cfg.command},
                        {"field", cfg.field},
                        {"strength", cfg.strength},
                        {"ic",
                         {cfg.ic.pos.x, cfg.ic.pos.y, cfg.ic.pos.z, cfg.ic.vel.x,
                          cfg.ic.vel.y, cfg.ic.vel.z}},
                        {"t_end", cfg.t_end},
                        {"sample_dt", cfg.sample_dt},
                        {"rel_tol", cfg.rel_tol},
                        {"abs_tol", cfg.abs_tol},
                        {"method", cfg.method}};
}

ordered_json sample_to_json(const TrajectorySample& s) {
    return ordered_json{{"t", s.t},
                        {"x", s.pos.x},
                        {"y", s.pos.y},
                        {"z", s.pos.z},
                        {"vx", s.vel.x},
                        {"vy", s.vel.y},
                        {"vz", s.vel.z},
                        {"speed_drift", s.speed_drift},
                        {"p0_drift", s.p0_drift},
                        {"q0_drift", s.q0_drift}};
}

} // namespace

void write_trajectory_json(std::ostream& os, const RunConfig& cfg, const CaseTag& tag,
                           const Trajectory& tr, bool precision_flag) {
    ordered_json j;
    j["config"] = config_to_json(cfg);
    ordered_json c = case_to_json(tag);
    j["case"] = c["case"];
    j["invariants"] = c["invariants"];
    j["cubic"] = c["cubic"];
    j["admissible_rho"] = c["admissible_rho"];
    j["samples"] = ordered_json::array();
    for (const TrajectorySample& s : tr) j["samples"].push_back(sample_to_json(s));
    DriftReport dr = drift_report(tr);
    j["summary"] = {{"n_samples", tr.size()},
                    {"max_speed_drift", dr.max_speed_drift},
                    {"max_p0_drift", dr.max_p0_drift},
                    {"max_q0_drift", dr.max_q0_drift},
                    {"precision_flag", precision_flag}};
    os << j.dump(2) << '\n';
}

void write_case_text(std::ostream& os, const CaseTag& tag) {
    os << "case: " << to_string(tag.kind) << '\n';
    if (tag.kind == CaseKind::HelixCaseII)
        os << "orientation: " << (tag.orientation >= 0 ? 1 : -1) << '\n';
    if (tag.kind == CaseKind::ClassicalField)
        os << "strength: " << format_double(tag.strength) << '\n';
    if (!tag.reason.empty()) os << "reason: " << tag.reason << '\n';
    if (!is_rotational_kind(tag.kind)) return;
    os << "p0: " << format_double(tag.inv.p0) << '\n';
    os << "q0: " << format_double(tag.inv.q0) << '\n';
    os << "rho0: " << format_double(tag.inv.rho0) << '\n';
    os << "delta: " << format_double(tag.cubic.delta) << '\n';
    os << "roots:";
    for (int i = 0; i < tag.cubic.n_real; ++i)
        os << ' ' << format_double(tag.cubic.roots[i]);
    if (tag.cubic.n_real == 0) os << " none";
    os << '\n';
    if (auto band = rho_band(tag))
        os << "admissible_rho: " << format_double((*band)[0]) << ' '
           << format_double((*band)[1]) << '\n';
    else
        os << "admissible_rho: none\n";
}

void write_case_json(std::ostream& os, const CaseTag& tag) {
    os << case_to_json(tag).dump(2) << '\n';
}

CompareSummary compare_summary(const Trajectory& num, const Trajectory& cf, double tol) {
    CompareSummary s;
    s.tolerance = tol;
    const size_t n = std::min(num.size(), cf.size());
    for (size_t i = 0; i < n; ++i)
        s.max_deviation = std::max(s.max_deviation, norm(num[i].pos - cf[i].pos));
    s.num_drift = drift_report(num);
    s.cf_drift = drift_report(cf);
    return s;
}

void write_compare_csv(std::ostream& os, const Trajectory& num, const Trajectory& cf,
                       const CompareSummary& s) {
    os << "t,x_num,y_num,z_num,x_cf,y_cf,z_cf,deviation\n";
    const size_t n = std::min(num.size(), cf.size());
    for (size_t i = 0; i < n; ++i) {
        const TrajectorySample& a = num[i];
        const TrajectorySample& b = cf[i];
        os << format_double(a.t) << ',' << format_double(a.pos.x) << ','
           << format_double(a.pos.y) << ',' << format_double(a.pos.z) << ','
           << format_double(b.pos.x) << ',' << format_double(b.pos.y) << ','
           << format_double(b.pos.z) << ',' << format_double(norm(a.pos - b.pos))
           << '\n';
    }
    os << "# max_deviation = " << format_double(s.max_deviation) << '\n';
    os << "# tolerance = " << format_double(s.tolerance) << '\n';
    os << "# rk45 drift: speed " << format_double(s.num_drift.max_speed_drift) << " p0 "
       << format_double(s.num_drift.max_p0_drift) << " q0 "
       << format_double(s.num_drift.max_q0_drift) << '\n';
    os << "# closed-form drift: speed " << format_double(s.cf_drift.max_speed_drift)
       << " p0 " << format_double(s.cf_drift.max_p0_drift) << " q0 "
       << format_double(s.cf_drift.max_q0_drift) << '\n';
}

void write_compare_json(std::ostream& os, const RunConfig& cfg, const CaseTag& tag,
                        const Trajectory& num, const Trajectory& cf,
                        const CompareSummary& s) {
    ordered_json j;
    j["config"] = config_to_json(cfg);
    ordered_json c = case_to_json(tag);
    j["case"] = c["case"];
    j["invariants"] = c["invariants"];
    j["samples"] = ordered_json::array();
    const size_t n = std::min(num.size(), cf.size());
    for (size_t i = 0; i < n; ++i) {
        const TrajectorySample& a = num[i];
        const TrajectorySample& b = cf[i];
        j["samples"].push_back(ordered_json{
            {"t", a.t},
            {"num", {{"x", a.pos.x}, {"y", a.pos.y}, {"z", a.pos.z}, {"vx", a.vel.x}, {"vy", a.vel.y}, {"vz", a.vel.z}}},
            {"closed_form", {{"x", b.pos.x}, {"y", b.pos.y}, {"z", b.pos.z}, {"vx", b.vel.x}, {"vy", b.vel.y}, {"vz", b.vel.z}}},
            {"deviation", norm(a.pos - b.pos)}});
    }
    j["summary"] = {{"n_samples", n},
                    {"max_deviation", s.max_deviation},
                    {"tolerance", s.tolerance},
                    {"within_tolerance", s.max_deviation <= s.tolerance},
                    {"rk45_max_speed_drift", s.num_drift.max_speed_drift},
                    {"rk45_max_p0_drift", s.num_drift.max_p0_drift},
                    {"rk45_max_q0_drift", s.num_drift.max_q0_drift},
                    {"closed_form_max_speed_drift", s.cf_drift.max_speed_drift},
                    {"closed_form_max_p0_drift", s.cf_drift.max_p0_drift},
                    {"closed_form_max_q0_drift", s.cf_drift.max_q0_drift}};
    os << j.dump(2) << '\n';
}

namespace {

TrajectorySample sample_from_fields(const std::array<double, 10>& v) {
    TrajectorySample s;
    s.t = v[0];
    s.pos = {v[1], v[2], v[3]};
    s.vel = {v[4], v[5], v[6]};
    s.speed_drift = v[7];
    s.p0_drift = v[8];
    s.q0_drift = v[9];
    return s;
}

TrajectoryFile read_csv(std::istream& is) {
    TrajectoryFile out;
    std::string line;
    if (!std::getline(is, line)) throw DomainError("empty trajectory file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTrajectoryCsvHeader)
        throw DomainError("unrecognized csv header: " + line);
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::array<double, 10> v{};
        std::stringstream ss(line);
        std::string cell;
        for (int i = 0; i < 10; ++i) {
            if (!std::getline(ss, cell, ','))
                throw DomainError("short csv row: " + line);
            try {
                v[i] = std::stod(cell);
            } catch (const std::exception&) {
                throw DomainError("bad csv number: " + cell);
            }
        }
        out.samples.push_back(sample_from_fields(v));
    }
    return out;
}

TrajectoryFile read_json(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("bad json trajectory: ") + e.what());
    }
    if (!j.contains("samples") || !j["samples"].is_array())
        throw DomainError("json trajectory lacks a samples array");
    TrajectoryFile out;
    if (j.contains("config") && j["config"].contains("field"))
        out.field = j["config"]["field"].get<std::string>();
    if (j.contains("case") && j["case"].is_object() && j["case"].contains("kind"))
        out.case_name = j["case"]["kind"].get<std::string>();
    for (const auto& e : j["samples"]) {
        try {
            std::array<double, 10> v{e.at("t").get<double>(),  e.at("x").get<double>(),
                                     e.at("y").get<double>(),  e.at("z").get<double>(),
                                     e.at("vx").get<double>(), e.at("vy").get<double>(),
                                     e.at("vz").get<double>(), e.value("speed_drift", 0.0),
                                     e.value("p0_drift", 0.0), e.value("q0_drift", 0.0)};
            out.samples.push_back(sample_from_fields(v));
        } catch (const nlohmann::json::exception& ex) {
            throw DomainError(std::string("bad json sample: ") + ex.what());
        }
    }
    return out;
}

} // namespace

TrajectoryFile read_trajectory_file(std::istream& is) {
    int c = is.peek();
    while (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
        is.get();
        c = is.peek();
    }
    if (c == std::char_traits<char>::eof()) throw DomainError("empty trajectory file");
    if (c == '{') return read_json(is);
    return read_csv(is);
}

} // namespace magline
