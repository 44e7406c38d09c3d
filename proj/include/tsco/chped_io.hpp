#ifndef TSCO_CHPED_IO_HPP
#define TSCO_CHPED_IO_HPP

#include <fstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "tsco/chped.hpp"

// JSON system-definition format:
//   { "name", "power_units": [...], "cogen_units": [... "region": [...]], "heat_units": [...],
//     "loss": {"b", "b0", "b00"} (optional), "demand": {"p", "h"}, "balance_tolerance" (optional) }

namespace tsco::chped {

inline void to_json(nlohmann::json& j, const Interval& v)
{
    j = nlohmann::json::array({v.lo, v.hi});
}

inline void from_json(const nlohmann::json& j, Interval& v)
{
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("interval must be a two-element array");
    }
    v.lo = j[0].get<double>();
    v.hi = j[1].get<double>();
}

inline void to_json(nlohmann::json& j, const PowerUnit& u)
{
    j = {{"name", u.name}, {"a", u.a}, {"b", u.b}, {"c", u.c}, {"d", u.d}, {"e", u.e}, {"p_min", u.p_min}, {"p_max", u.p_max}};
}

inline void from_json(const nlohmann::json& j, PowerUnit& u)
{
    u.name = j.value("name", std::string {});
    j.at("a").get_to(u.a);
    j.at("b").get_to(u.b);
    j.at("c").get_to(u.c);
    u.d = j.value("d", 0.0);
    u.e = j.value("e", 0.0);
    j.at("p_min").get_to(u.p_min);
    j.at("p_max").get_to(u.p_max);
}

inline void to_json(nlohmann::json& j, const HalfPlaneBranch& br)
{
    j = {{"gate_lo", br.gate_lo}, {"gate_hi", br.gate_hi}, {"closed_below", br.closed_below},
         {"p_coef", br.p_coef},   {"h_coef", br.h_coef},   {"constant", br.constant}};
}

inline void from_json(const nlohmann::json& j, HalfPlaneBranch& br)
{
    j.at("gate_lo").get_to(br.gate_lo);
    j.at("gate_hi").get_to(br.gate_hi);
    br.closed_below = j.value("closed_below", false);
    j.at("p_coef").get_to(br.p_coef);
    j.at("h_coef").get_to(br.h_coef);
    j.at("constant").get_to(br.constant);
}

inline void to_json(nlohmann::json& j, const PiecewiseHalfPlane& g)
{
    j = {{"name", g.name}, {"gate", g.gate == GateVariable::heat ? "heat" : "power"}, {"branches", g.branches}};
}

inline void from_json(const nlohmann::json& j, PiecewiseHalfPlane& g)
{
    g.name = j.value("name", std::string {});
    const auto gate = j.value("gate", std::string {"heat"});
    if (gate == "heat") {
        g.gate = GateVariable::heat;
    } else if (gate == "power") {
        g.gate = GateVariable::power;
    } else {
        throw std::invalid_argument("constraint " + g.name + ": gate must be \"heat\" or \"power\"");
    }
    j.at("branches").get_to(g.branches);
}

inline void to_json(nlohmann::json& j, const CogenUnit& u)
{
    j = {{"name", u.name}, {"a", u.a}, {"b", u.b}, {"c", u.c}, {"d", u.d}, {"e", u.e}, {"f", u.f},
         {"p_box", u.p_box}, {"h_box", u.h_box}, {"region", u.region}};
}

inline void from_json(const nlohmann::json& j, CogenUnit& u)
{
    u.name = j.value("name", std::string {});
    j.at("a").get_to(u.a);
    j.at("b").get_to(u.b);
    j.at("c").get_to(u.c);
    j.at("d").get_to(u.d);
    j.at("e").get_to(u.e);
    j.at("f").get_to(u.f);
    j.at("p_box").get_to(u.p_box);
    j.at("h_box").get_to(u.h_box);
    u.region = j.value("region", std::vector<PiecewiseHalfPlane> {});
}

inline void to_json(nlohmann::json& j, const HeatUnit& u)
{
    j = {{"name", u.name}, {"a", u.a}, {"b", u.b}, {"c", u.c}, {"h_min", u.h_min}, {"h_max", u.h_max}};
}

inline void from_json(const nlohmann::json& j, HeatUnit& u)
{
    u.name = j.value("name", std::string {});
    j.at("a").get_to(u.a);
    j.at("b").get_to(u.b);
    j.at("c").get_to(u.c);
    j.at("h_min").get_to(u.h_min);
    j.at("h_max").get_to(u.h_max);
}

inline void to_json(nlohmann::json& j, const LossModel& m)
{
    j = {{"b", m.b}, {"b0", m.b0}, {"b00", m.b00}};
}

inline void from_json(const nlohmann::json& j, LossModel& m)
{
    j.at("b").get_to(m.b);
    j.at("b0").get_to(m.b0);
    m.b00 = j.value("b00", 0.0);
}

inline void to_json(nlohmann::json& j, const ChpedSystem& sys)
{
    j = {{"name", sys.name},
         {"power_units", sys.power_units},
         {"cogen_units", sys.cogen_units},
         {"heat_units", sys.heat_units},
         {"demand", {{"p", sys.p_demand}, {"h", sys.h_demand}}},
         {"balance_tolerance", sys.balance_tolerance}};
    if (sys.loss) {
        j["loss"] = *sys.loss;
    }
}

inline void from_json(const nlohmann::json& j, ChpedSystem& sys)
{
    sys.name = j.value("name", std::string {"custom"});
    sys.power_units = j.value("power_units", std::vector<PowerUnit> {});
    sys.cogen_units = j.value("cogen_units", std::vector<CogenUnit> {});
    sys.heat_units = j.value("heat_units", std::vector<HeatUnit> {});
    if (j.contains("loss") && !j.at("loss").is_null()) {
        sys.loss = j.at("loss").get<LossModel>();
    } else {
        sys.loss.reset();
    }
    j.at("demand").at("p").get_to(sys.p_demand);
    j.at("demand").at("h").get_to(sys.h_demand);
    sys.balance_tolerance = j.value("balance_tolerance", 1e-4);
}

/// Parses and validates a system definition.
inline ChpedSystem parse_system(const std::string& text)
{
    ChpedSystem sys = nlohmann::json::parse(text).get<ChpedSystem>();
    sys.validate();
    return sys;
}

inline ChpedSystem load_system(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open system file " + path);
    }
    ChpedSystem sys = nlohmann::json::parse(in).get<ChpedSystem>();
    sys.validate();
    return sys;
}

inline std::string dump_system(const ChpedSystem& sys, int indent = 2)
{
    return nlohmann::json(sys).dump(indent);
}

} // namespace tsco::chped

#endif // TSCO_CHPED_IO_HPP
