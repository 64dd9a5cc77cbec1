#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bsc/errors.hpp"

namespace bsc {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2& a, const Point2& b) {
        return a.x == b.x && a.y == b.y;
    }
};

inline double distance(const Point2& a, const Point2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct Contour {
    std::vector<Point2> points;
    bool closed = true;
};

struct Shape {
    std::vector<Contour> contours;
    std::optional<std::string> label;

    std::size_t point_count() const {
        std::size_t n = 0;
        for (const auto& c : contours) n += c.points.size();
        return n;
    }

    std::vector<Point2> all_points() const {
        std::vector<Point2> pts;
        pts.reserve(point_count());
        for (const auto& c : contours)
            pts.insert(pts.end(), c.points.begin(), c.points.end());
        return pts;
    }

    // Rebuilds a shape with the same contour structure from a flat point list.
    Shape with_points(const std::vector<Point2>& pts) const {
        Shape out;
        out.label = label;
        std::size_t k = 0;
        for (const auto& c : contours) {
            Contour nc;
            nc.closed = c.closed;
            nc.points.assign(pts.begin() + k, pts.begin() + k + c.points.size());
            k += c.points.size();
            out.contours.push_back(std::move(nc));
        }
        return out;
    }
};

inline Point2 centroid(const std::vector<Point2>& pts) {
    double sx = 0.0, sy = 0.0;
    for (const auto& p : pts) { sx += p.x; sy += p.y; }
    const double n = static_cast<double>(pts.size());
    return {sx / n, sy / n};
}

// Mean of the full distance matrix (all n^2 ordered pairs, zero diagonal
// included), matching the usual shape-context scale normalization.
inline double mean_pairwise_distance(const std::vector<Point2>& pts) {
    const std::size_t n = pts.size();
    if (n < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            sum += distance(pts[i], pts[j]);
    return 2.0 * sum / (static_cast<double>(n) * static_cast<double>(n));
}

// Centroid to origin, mean pairwise distance to 1.
inline Shape normalize(const Shape& shape) {
    auto pts = shape.all_points();
    if (pts.size() < 2) throw DegenerateShape("normalize: fewer than 2 points");
    const Point2 c = centroid(pts);
    const double d = mean_pairwise_distance(pts);
    if (d == 0.0) throw DegenerateShape("normalize: all points coincide");
    for (auto& p : pts) {
        p.x = (p.x - c.x) / d;
        p.y = (p.y - c.y) / d;
    }
    return shape.with_points(pts);
}

inline Shape translate(const Shape& shape, double dx, double dy) {
    auto pts = shape.all_points();
    for (auto& p : pts) { p.x += dx; p.y += dy; }
    return shape.with_points(pts);
}

inline Shape scale(const Shape& shape, double factor) {
    auto pts = shape.all_points();
    for (auto& p : pts) { p.x *= factor; p.y *= factor; }
    return shape.with_points(pts);
}

}  // namespace bsc
