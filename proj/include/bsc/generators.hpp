#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bsc/geometry.hpp"

namespace bsc {

enum class ShapeFamily { Circle, Square, Star, Blob, MultiContourGlyph };

inline ShapeFamily shape_family_from_string(const std::string& name) {
    if (name == "circle") return ShapeFamily::Circle;
    if (name == "square") return ShapeFamily::Square;
    if (name == "star") return ShapeFamily::Star;
    if (name == "blob") return ShapeFamily::Blob;
    if (name == "multi_contour_glyph") return ShapeFamily::MultiContourGlyph;
    throw BadParams("unknown shape family: " + name);
}

namespace detail {

inline Contour radial_contour(int count, double phase,
                              const std::function<double(double)>& radius_at) {
    Contour c;
    c.closed = true;
    c.points.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double t = 2.0 * std::numbers::pi * k / count + phase;
        const double r = radius_at(t);
        c.points.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return c;
}

inline Contour square_contour(int count) {
    // perimeter-uniform points on the unit square [-1, 1]^2
    Contour c;
    c.closed = true;
    c.points.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double s = 8.0 * k / count;  // arc length along the perimeter
        double x, y;
        if (s < 2.0) { x = -1.0 + s; y = -1.0; }
        else if (s < 4.0) { x = 1.0; y = -1.0 + (s - 2.0); }
        else if (s < 6.0) { x = 1.0 - (s - 4.0); y = 1.0; }
        else { x = -1.0; y = 1.0 - (s - 6.0); }
        c.points.push_back({x, y});
    }
    return c;
}

}  // namespace detail

// Deterministic synthetic boundary shapes for tests and benchmarks.
inline Shape generate_shape(ShapeFamily family, int point_count, double jitter,
                            unsigned seed) {
    if (point_count < 3) throw BadParams("generate_shape: point_count must be >= 3");
    if (jitter < 0.0) throw BadParams("generate_shape: jitter must be >= 0");

    std::mt19937 rng(seed);
    Shape shape;
    switch (family) {
        case ShapeFamily::Circle:
            shape.contours.push_back(detail::radial_contour(
                point_count, 0.0, [](double) { return 1.0; }));
            shape.label = "circle";
            break;
        case ShapeFamily::Square:
            shape.contours.push_back(detail::square_contour(point_count));
            shape.label = "square";
            break;
        case ShapeFamily::Star: {
            // 5-pointed star, radius oscillating between 0.5 and 1.0
            shape.contours.push_back(detail::radial_contour(
                point_count, 0.0,
                [](double t) { return 0.75 + 0.25 * std::cos(5.0 * t); }));
            shape.label = "star";
            break;
        }
        case ShapeFamily::Blob: {
            // smooth random radial perturbation from a few Fourier terms
            std::uniform_real_distribution<double> amp(-0.15, 0.15);
            std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
            std::vector<double> a(4), p(4);
            for (int k = 0; k < 4; ++k) { a[k] = amp(rng); p[k] = ph(rng); }
            shape.contours.push_back(detail::radial_contour(
                point_count, 0.0, [&](double t) {
                    double r = 1.0;
                    for (int k = 0; k < 4; ++k) r += a[k] * std::cos((k + 2) * t + p[k]);
                    return r;
                }));
            shape.label = "blob";
            break;
        }
        case ShapeFamily::MultiContourGlyph: {
            // outer ring plus inner hole contour
            const int outer = std::max(3, 2 * point_count / 3);
            const int inner = std::max(3, point_count - outer);
            shape.contours.push_back(detail::radial_contour(
                outer, 0.0, [](double) { return 1.0; }));
            shape.contours.push_back(detail::radial_contour(
                inner, 0.0, [](double) { return 0.45; }));
            shape.label = "multi_contour_glyph";
            break;
        }
    }

    if (jitter > 0.0) {
        // radial + tangential displacement, each bounded by jitter, so every
        // point stays within jitter * sqrt(2) of its unperturbed radius; the
        // tangential part keeps relative angles generic
        std::uniform_real_distribution<double> noise(-jitter, jitter);
        for (auto& c : shape.contours)
            for (auto& p : c.points) {
                const double r = std::hypot(p.x, p.y);
                if (r == 0.0) continue;
                const double dr = noise(rng), dt = noise(rng);
                const double ux = p.x / r, uy = p.y / r;
                p.x += dr * ux - dt * uy;
                p.y += dr * uy + dt * ux;
            }
    }
    return shape;
}

}  // namespace bsc
