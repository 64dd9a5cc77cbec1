#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bsc/geometry.hpp"

namespace bsc {

namespace detail {

inline double parse_double(std::string_view tok, int line_no) {
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' || tok.back() == '\r'))
        tok.remove_suffix(1);
    double v;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw ParseError(line_no, "expected number, got '" + std::string(tok) + "'");
    if (!std::isfinite(v)) throw ParseError(line_no, "non-finite coordinate");
    return v;
}

inline std::string format_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

// CSV "x,y" lines; a blank line starts a new contour.
inline Shape load_points(const std::string& text) {
    Shape shape;
    Contour current;
    int line_no = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv(line);
        if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
        if (sv.empty()) {
            if (!current.points.empty()) {
                shape.contours.push_back(std::move(current));
                current = Contour{};
            }
            continue;
        }
        const auto comma = sv.find(',');
        if (comma == std::string_view::npos)
            throw ParseError(line_no, "expected 'x,y'");
        Point2 p;
        p.x = detail::parse_double(sv.substr(0, comma), line_no);
        p.y = detail::parse_double(sv.substr(comma + 1), line_no);
        current.points.push_back(p);
    }
    if (!current.points.empty()) shape.contours.push_back(std::move(current));
    return shape;
}

inline std::string save_points(const Shape& shape) {
    std::string out;
    bool first = true;
    for (const auto& c : shape.contours) {
        if (!first) out += "\n";
        first = false;
        for (const auto& p : c.points) {
            out += detail::format_coord(p.x);
            out += ',';
            out += detail::format_coord(p.y);
            out += '\n';
        }
    }
    return out;
}

inline nlohmann::json shape_to_json(const Shape& shape) {
    nlohmann::json contours = nlohmann::json::array();
    for (const auto& c : shape.contours) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : c.points) pts.push_back({p.x, p.y});
        contours.push_back(std::move(pts));
    }
    nlohmann::json j;
    j["contours"] = std::move(contours);
    j["label"] = shape.label ? nlohmann::json(*shape.label) : nlohmann::json(nullptr);
    return j;
}

inline Shape shape_from_json(const nlohmann::json& j) {
    Shape shape;
    for (const auto& jc : j.at("contours")) {
        Contour c;
        for (const auto& jp : jc)
            c.points.push_back({jp.at(0).get<double>(), jp.at(1).get<double>()});
        shape.contours.push_back(std::move(c));
    }
    if (j.contains("label") && !j["label"].is_null())
        shape.label = j["label"].get<std::string>();
    return shape;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << data;
}

}  // namespace bsc
