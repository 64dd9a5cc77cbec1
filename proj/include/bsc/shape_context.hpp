#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "bsc/geometry.hpp"

namespace bsc {

struct ShapeContextParams {
    int radial_bins = 5;
    int angular_bins = 12;
    double r_inner = 1.0 / 8.0;  // fractions of mean pairwise distance
    double r_outer = 2.0;
    bool rotation_invariant = false;

    friend bool operator==(const ShapeContextParams&, const ShapeContextParams&) = default;
};

struct DescriptorSet {
    std::vector<std::vector<int>> histograms;  // m x (radial_bins * angular_bins)
    std::vector<Point2> source_points;
    ShapeContextParams params;
};

struct CostMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;  // row-major

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * cols + j]; }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * cols + j]; }

    CostMatrix transposed() const {
        CostMatrix t;
        t.rows = cols;
        t.cols = rows;
        t.values.resize(values.size());
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }
};

inline nlohmann::json cost_matrix_to_json(const CostMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return {{"m", m.rows}, {"n", m.cols}, {"values", std::move(rows)}};
}

namespace detail {

// Per-point tangent angles from central differences along each contour,
// used when rotation_invariant is set.
inline std::vector<double> tangent_angles(const Shape& shape) {
    std::vector<double> angles;
    angles.reserve(shape.point_count());
    for (const auto& c : shape.contours) {
        const int len = static_cast<int>(c.points.size());
        for (int k = 0; k < len; ++k) {
            int prev = k - 1, next = k + 1;
            if (c.closed) {
                prev = (k - 1 + len) % len;
                next = (k + 1) % len;
            } else {
                if (prev < 0) prev = 0;
                if (next >= len) next = len - 1;
            }
            const double dx = c.points[next].x - c.points[prev].x;
            const double dy = c.points[next].y - c.points[prev].y;
            angles.push_back((dx == 0.0 && dy == 0.0) ? 0.0 : std::atan2(dy, dx));
        }
    }
    return angles;
}

}  // namespace detail

// Log-polar histogram of relative positions, one per point. Radii are
// normalized by the mean pairwise distance; out-of-range radii clamp to the
// nearest radial bin, so each histogram sums to exactly m - 1.
inline DescriptorSet compute_descriptors(const Shape& shape,
                                         const ShapeContextParams& params = {}) {
    if (params.radial_bins < 2 || params.angular_bins < 4 ||
        params.r_inner >= params.r_outer || params.r_inner <= 0.0)
        throw BadParams("compute_descriptors: invalid shape-context params");

    const auto pts = shape.all_points();
    const int m = static_cast<int>(pts.size());
    if (m < 3) throw DegenerateShape("compute_descriptors: need at least 3 points");
    const double mean_dist = mean_pairwise_distance(pts);
    if (mean_dist == 0.0) throw DegenerateShape("compute_descriptors: zero extent");

    std::vector<double> tangents;
    if (params.rotation_invariant) tangents = detail::tangent_angles(shape);

    const double two_pi = 2.0 * std::numbers::pi;
    const double log_inner = std::log(params.r_inner);
    const double log_step =
        (std::log(params.r_outer) - log_inner) / params.radial_bins;
    const int nbins = params.radial_bins * params.angular_bins;

    DescriptorSet ds;
    ds.source_points = pts;
    ds.params = params;
    ds.histograms.assign(m, std::vector<int>(nbins, 0));

    for (int i = 0; i < m; ++i) {
        auto& hist = ds.histograms[i];
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            const double dx = pts[j].x - pts[i].x;
            const double dy = pts[j].y - pts[i].y;
            const double r = std::hypot(dx, dy) / mean_dist;

            int rbin = 0;
            if (r > 0.0) {
                rbin = static_cast<int>(std::floor((std::log(r) - log_inner) / log_step));
                rbin = std::clamp(rbin, 0, params.radial_bins - 1);
            }

            double theta = std::atan2(dy, dx);
            if (params.rotation_invariant) theta -= tangents[i];
            theta = std::fmod(theta, two_pi);
            if (theta < 0.0) theta += two_pi;
            int abin = static_cast<int>(std::floor(params.angular_bins * theta / two_pi));
            if (abin >= params.angular_bins) abin = 0;  // theta == 2*pi wraps

            ++hist[rbin * params.angular_bins + abin];
        }
    }
    return ds;
}

// 0.5 * sum (h - g)^2 / (h + g) over count-normalized histograms; 0/0
// terms contribute nothing. Result lies in [0, 1].
inline double chi2_cost(const std::vector<int>& h, const std::vector<int>& g) {
    if (h.size() != g.size())
        throw LengthMismatch("chi2_cost: histogram lengths differ");
    long sh = 0, sg = 0;
    for (int v : h) sh += v;
    for (int v : g) sg += v;
    double acc = 0.0;
    for (std::size_t b = 0; b < h.size(); ++b) {
        const double hb = sh > 0 ? static_cast<double>(h[b]) / sh : 0.0;
        const double gb = sg > 0 ? static_cast<double>(g[b]) / sg : 0.0;
        const double denom = hb + gb;
        if (denom > 0.0) {
            const double diff = hb - gb;
            acc += diff * diff / denom;
        }
    }
    return std::clamp(0.5 * acc, 0.0, 1.0);
}

inline double chi2_cost(const std::vector<double>& h, const std::vector<double>& g) {
    if (h.size() != g.size())
        throw LengthMismatch("chi2_cost: histogram lengths differ");
    double acc = 0.0;
    for (std::size_t b = 0; b < h.size(); ++b) {
        const double denom = h[b] + g[b];
        if (denom > 0.0) {
            const double diff = h[b] - g[b];
            acc += diff * diff / denom;
        }
    }
    return std::clamp(0.5 * acc, 0.0, 1.0);
}

// M(i, j) = chi2_cost(dp[i], dq[j]).
inline CostMatrix cost_matrix(const DescriptorSet& dp, const DescriptorSet& dq) {
    if (!(dp.params == dq.params))
        throw ParamMismatch("cost_matrix: descriptor sets built with different params");

    auto normalized = [](const DescriptorSet& ds) {
        std::vector<std::vector<double>> out(ds.histograms.size());
        for (std::size_t i = 0; i < ds.histograms.size(); ++i) {
            long total = 0;
            for (int v : ds.histograms[i]) total += v;
            out[i].resize(ds.histograms[i].size());
            for (std::size_t b = 0; b < out[i].size(); ++b)
                out[i][b] = total > 0
                                ? static_cast<double>(ds.histograms[i][b]) / total
                                : 0.0;
        }
        return out;
    };
    const auto hp = normalized(dp);
    const auto hq = normalized(dq);

    CostMatrix mat;
    mat.rows = static_cast<int>(hp.size());
    mat.cols = static_cast<int>(hq.size());
    mat.values.resize(static_cast<std::size_t>(mat.rows) * mat.cols);
    for (int i = 0; i < mat.rows; ++i)
        for (int j = 0; j < mat.cols; ++j)
            mat.at(i, j) = chi2_cost(hp[i], hq[j]);
    return mat;
}

}  // namespace bsc
