#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "bsc/correspondence.hpp"
#include "bsc/geometry.hpp"

namespace bsc {

// Overlay of both shapes with correspondence lines: kept solid, dropped
// dashed. Shape A strokes blue, shape B strokes red.
inline std::string correspondence_svg(const Shape& a, const Shape& b,
                                      const CorrespondenceSet& all,
                                      const PrunedCorrespondenceSet& pruned,
                                      int canvas = 800) {
    const auto pa = a.all_points();
    const auto pb = b.all_points();

    double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
    for (const auto* pts : {&pa, &pb})
        for (const auto& p : *pts) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
    const double margin = 0.05 * canvas;
    const double s = (canvas - 2.0 * margin) / span;
    auto tx = [&](const Point2& p) { return margin + (p.x - min_x) * s; };
    auto ty = [&](const Point2& p) { return margin + (p.y - min_y) * s; };

    std::string svg;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                  "height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                  canvas, canvas, canvas, canvas);
    svg += buf;

    auto polyline = [&](const std::vector<Point2>& pts, std::size_t begin,
                        std::size_t end, bool closed, const char* color) {
        svg += "<path d=\"";
        for (std::size_t i = begin; i < end; ++i) {
            std::snprintf(buf, sizeof(buf), "%c%.2f %.2f", i == begin ? 'M' : 'L',
                          tx(pts[i]), ty(pts[i]));
            svg += buf;
        }
        if (closed) svg += "Z";
        std::snprintf(buf, sizeof(buf),
                      "\" fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" "
                      "class=\"shape\"/>\n",
                      color);
        svg += buf;
    };
    auto draw_shape = [&](const Shape& shape, const char* color) {
        std::size_t k = 0;
        const auto pts = shape.all_points();
        for (const auto& c : shape.contours) {
            polyline(pts, k, k + c.points.size(), c.closed, color);
            k += c.points.size();
        }
    };
    draw_shape(a, "#1f6fb5");
    draw_shape(b, "#c23b3b");

    std::vector<char> is_kept(all.pairs.size(), 0);
    for (const auto& kp : pruned.kept)
        for (std::size_t i = 0; i < all.pairs.size(); ++i)
            if (all.pairs[i].source_index == kp.source_index) is_kept[i] = 1;

    const bool forward = all.direction == Direction::Forward;
    for (std::size_t i = 0; i < all.pairs.size(); ++i) {
        const auto& pr = all.pairs[i];
        const Point2& src = forward ? pa[pr.source_index] : pb[pr.source_index];
        const Point2& dst = forward ? pb[pr.target_index] : pa[pr.target_index];
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                      "stroke=\"#555\" stroke-width=\"0.6\"%s/>\n",
                      tx(src), ty(src), tx(dst), ty(dst),
                      is_kept[i] ? "" : " stroke-dasharray=\"4 3\"");
        svg += buf;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace bsc
