#pragma once

#include <array>
#include <deque>
#include <unordered_set>
#include <vector>

#include "bsc/geometry.hpp"
#include "bsc/image.hpp"

namespace bsc {

namespace detail {

// Clockwise 8-neighborhood (image coordinates, row increases downward).
inline constexpr std::array<std::array<int, 2>, 8> kMoore = {{
    {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}}};

struct Grid {
    int w, h;
    std::vector<int> label;  // -1 background, else foreground component id

    bool fg(int r, int c) const {
        return r >= 0 && r < h && c >= 0 && c < w &&
               label[static_cast<std::size_t>(r) * w + c] >= 0;
    }
    int& at(int r, int c) { return label[static_cast<std::size_t>(r) * w + c]; }
    int at(int r, int c) const { return label[static_cast<std::size_t>(r) * w + c]; }
};

inline int direction_of(int fr, int fc, int tr, int tc) {
    for (int d = 0; d < 8; ++d)
        if (kMoore[d][0] == tr - fr && kMoore[d][1] == tc - fc) return d;
    return -1;
}

// Moore-neighbor tracing with Jacob's stopping criterion: terminate on
// re-entering the start pixel from the original backtrack cell. start must be
// foreground and (start + kMoore[back_dir]) background/outside.
inline std::vector<Point2> moore_trace(const Grid& g, int sr, int sc, int back_dir) {
    std::vector<Point2> pts;
    pts.push_back({static_cast<double>(sc), static_cast<double>(sr)});

    int cr = sr, cc = sc;
    int br = sr + kMoore[back_dir][0], bc = sc + kMoore[back_dir][1];
    const int br0 = br, bc0 = bc;
    const long guard = 8L * g.w * g.h + 8;
    for (long steps = 0; steps < guard; ++steps) {
        const int bdir = direction_of(cr, cc, br, bc);
        int found = -1, prev_r = br, prev_c = bc;
        for (int k = 1; k <= 8; ++k) {
            const int d = (bdir + k) % 8;
            const int nr = cr + kMoore[d][0], nc = cc + kMoore[d][1];
            if (g.fg(nr, nc)) { found = d; break; }
            prev_r = nr;
            prev_c = nc;
        }
        if (found < 0) break;  // isolated pixel
        br = prev_r;
        bc = prev_c;
        cr += kMoore[found][0];
        cc += kMoore[found][1];
        if (cr == sr && cc == sc && br == br0 && bc == bc0) break;
        pts.push_back({static_cast<double>(cc), static_cast<double>(cr)});
    }
    return pts;
}

}  // namespace detail

// All outer and inner boundaries of 8-connected foreground components
// (pixel >= fg_threshold), components ordered by first-scanned pixel.
inline Shape extract_contours(const BinaryImage& img, int fg_threshold = 128) {
    const int w = img.width, h = img.height;
    detail::Grid g{w, h, std::vector<int>(static_cast<std::size_t>(w) * h, -1)};

    // mark foreground
    bool any_fg = false;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (img.at(r, c) >= fg_threshold) { g.at(r, c) = -2; any_fg = true; }
    if (!any_fg) throw EmptyShape("extract_contours: no foreground pixels");

    // label components, 8-connected, scan order
    int ncomp = 0;
    std::vector<std::array<int, 2>> first_pixel;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (g.at(r, c) != -2) continue;
            const int id = ncomp++;
            first_pixel.push_back({r, c});
            std::deque<std::array<int, 2>> q{{r, c}};
            g.at(r, c) = id;
            while (!q.empty()) {
                auto [cr, cc] = q.front();
                q.pop_front();
                for (const auto& d : detail::kMoore) {
                    const int nr = cr + d[0], nc = cc + d[1];
                    if (nr >= 0 && nr < h && nc >= 0 && nc < w && g.at(nr, nc) == -2) {
                        g.at(nr, nc) = id;
                        q.push_back({nr, nc});
                    }
                }
            }
        }
    }

    // background: exterior reachable 4-connected from the border, the rest
    // are holes
    std::vector<char> exterior(static_cast<std::size_t>(w) * h, 0);
    std::deque<std::array<int, 2>> q;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if ((r == 0 || r == h - 1 || c == 0 || c == w - 1) && g.at(r, c) < 0 &&
                !exterior[static_cast<std::size_t>(r) * w + c]) {
                exterior[static_cast<std::size_t>(r) * w + c] = 1;
                q.push_back({r, c});
            }
    const int d4[4][2] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};
    while (!q.empty()) {
        auto [cr, cc] = q.front();
        q.pop_front();
        for (const auto& d : d4) {
            const int nr = cr + d[0], nc = cc + d[1];
            if (nr >= 0 && nr < h && nc >= 0 && nc < w && g.at(nr, nc) < 0 &&
                !exterior[static_cast<std::size_t>(nr) * w + nc]) {
                exterior[static_cast<std::size_t>(nr) * w + nc] = 1;
                q.push_back({nr, nc});
            }
        }
    }

    // hole regions, 4-connected, scan order; each belongs to the component
    // directly above its first pixel
    std::vector<char> hole_seen(static_cast<std::size_t>(w) * h, 0);
    std::vector<std::vector<std::array<int, 2>>> holes(ncomp);  // start pixels
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * w + c;
            if (g.at(r, c) >= 0 || exterior[idx] || hole_seen[idx]) continue;
            hole_seen[idx] = 1;
            q.push_back({r, c});
            while (!q.empty()) {
                auto [cr, cc] = q.front();
                q.pop_front();
                for (const auto& d : d4) {
                    const int nr = cr + d[0], nc = cc + d[1];
                    const std::size_t ni = static_cast<std::size_t>(nr) * w + nc;
                    if (nr >= 0 && nr < h && nc >= 0 && nc < w && g.at(nr, nc) < 0 &&
                        !exterior[ni] && !hole_seen[ni]) {
                        hole_seen[ni] = 1;
                        q.push_back({nr, nc});
                    }
                }
            }
            holes[g.at(r - 1, c)].push_back({r, c});
        }
    }

    Shape shape;
    std::unordered_set<long long> seen_pts;
    auto push_contour = [&](std::vector<Point2> pts) {
        std::vector<Point2> kept;
        for (const auto& p : pts) {
            const long long key =
                static_cast<long long>(p.y) * (w + 1) + static_cast<long long>(p.x);
            if (seen_pts.insert(key).second) kept.push_back(p);
        }
        if (!kept.empty()) {
            Contour ctr;
            ctr.points = std::move(kept);
            ctr.closed = true;
            shape.contours.push_back(std::move(ctr));
        }
    };

    for (int id = 0; id < ncomp; ++id) {
        auto [sr, sc] = first_pixel[id];
        push_contour(detail::moore_trace(g, sr, sc, 4));  // backtrack = W
        for (const auto& [hr, hc] : holes[id])
            push_contour(detail::moore_trace(g, hr - 1, hc, 2));  // backtrack = S
    }
    return shape;
}

}  // namespace bsc
