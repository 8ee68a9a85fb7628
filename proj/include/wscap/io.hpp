#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wscap/lower_functions.hpp"
#include "wscap/set_model.hpp"

namespace wscap {

inline nlohmann::json to_json(const SetSpec& spec) {
    nlohmann::json j;
    switch (spec.kind) {
        case SetSpec::Kind::Interval:
            j["kind"] = "interval";
            j["a"] = spec.a;
            j["b"] = spec.b;
            break;
        case SetSpec::Kind::FinitePoints:
            j["kind"] = "points";
            j["points"] = spec.points;
            break;
        case SetSpec::Kind::Union: {
            j["kind"] = "union";
            j["children"] = nlohmann::json::array();
            for (const auto& c : spec.children) j["children"].push_back(to_json(c));
            break;
        }
        case SetSpec::Kind::Cantor:
            j["kind"] = "cantor";
            j["pieces"] = spec.cantor_recipe.pieces;
            j["ratio"] = spec.cantor_recipe.ratio;
            j["depth"] = spec.cantor_recipe.depth;
            break;
    }
    return j;
}

inline SetSpec set_spec_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "interval")
        return SetSpec::interval(j.at("a").get<double>(), j.at("b").get<double>());
    if (kind == "points")
        return SetSpec::finite_points(j.at("points").get<std::vector<double>>());
    if (kind == "union") {
        std::vector<SetSpec> children;
        for (const auto& c : j.at("children")) children.push_back(set_spec_from_json(c));
        return SetSpec::make_union(std::move(children));
    }
    if (kind == "cantor")
        return SetSpec::cantor(j.at("pieces").get<int>(), j.at("ratio").get<double>(),
                               j.at("depth").get<int>());
    throw std::invalid_argument("unknown set kind: " + kind);
}

namespace detail {

inline std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace detail

// Compact CLI shorthand:
//   interval:a:b | point:x | points:x1,x2,... | cantor:m:rho:L | union:[s1,s2,...]
inline SetSpec parse_set_shorthand(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("bad set spec: " + text);
    const std::string head = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    if (head == "interval") {
        const auto parts = detail::split_top_level(rest, ':');
        if (parts.size() != 2) throw std::invalid_argument("interval:a:b expected");
        return SetSpec::interval(std::stod(parts[0]), std::stod(parts[1]));
    }
    if (head == "point") return SetSpec::point(std::stod(rest));
    if (head == "points") {
        std::vector<double> pts;
        for (const auto& p : detail::split_top_level(rest, ',')) pts.push_back(std::stod(p));
        return SetSpec::finite_points(std::move(pts));
    }
    if (head == "cantor") {
        const auto parts = detail::split_top_level(rest, ':');
        if (parts.size() != 3) throw std::invalid_argument("cantor:m:rho:L expected");
        return SetSpec::cantor(std::stoi(parts[0]), std::stod(parts[1]),
                               std::stoi(parts[2]));
    }
    if (head == "union") {
        if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
            throw std::invalid_argument("union:[...] expected");
        std::vector<SetSpec> children;
        for (const auto& c : detail::split_top_level(rest.substr(1, rest.size() - 2), ','))
            children.push_back(parse_set_shorthand(c));
        return SetSpec::make_union(std::move(children));
    }
    throw std::invalid_argument("unknown set spec kind: " + head);
}

inline std::string set_shorthand(const SetSpec& spec) {
    char buf[128];
    switch (spec.kind) {
        case SetSpec::Kind::Interval:
            std::snprintf(buf, sizeof buf, "interval:%.17g:%.17g", spec.a, spec.b);
            return buf;
        case SetSpec::Kind::FinitePoints: {
            std::string out = "points:";
            for (std::size_t i = 0; i < spec.points.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%s%.17g", i ? "," : "", spec.points[i]);
                out += buf;
            }
            return out;
        }
        case SetSpec::Kind::Union: {
            std::string out = "union:[";
            for (std::size_t i = 0; i < spec.children.size(); ++i) {
                if (i) out += ',';
                out += set_shorthand(spec.children[i]);
            }
            return out + "]";
        }
        case SetSpec::Kind::Cantor:
            std::snprintf(buf, sizeof buf, "cantor:%d:%.17g:%d", spec.cantor_recipe.pieces,
                          spec.cantor_recipe.ratio, spec.cantor_recipe.depth);
            return buf;
    }
    return "";
}

// H shorthand: hnu:<nu> | chung:<c>
inline LowerFunctionSpec parse_h_shorthand(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("bad H spec: " + text);
    const std::string head = text.substr(0, colon);
    const double v = std::stod(text.substr(colon + 1));
    if (head == "hnu") return LowerFunctionSpec::h_nu(v);
    if (head == "chung") return LowerFunctionSpec::critical_chung(v);
    throw std::invalid_argument("unknown H spec kind: " + head);
}

inline nlohmann::json to_json(const LowerFunctionSpec& h) {
    nlohmann::json j;
    switch (h.kind) {
        case LowerFunctionSpec::Kind::HNu:
            j["kind"] = "hnu";
            j["nu"] = h.nu;
            break;
        case LowerFunctionSpec::Kind::CriticalChung:
            j["kind"] = "chung";
            j["c"] = h.c;
            break;
        case LowerFunctionSpec::Kind::Tabulated:
            j["kind"] = "tabulated";
            j["samples"] = h.samples;
            break;
    }
    return j;
}

// Stable text form for numeric CSV/JSON output (round-trips doubles exactly).
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace wscap
