#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "bsc/geometry.hpp"

namespace bsc {

struct TpsConstraints {
    std::vector<Point2> source;
    std::vector<Point2> target;
};

// f(p) = a0 + a1 x + a2 y + sum_i w_i U(|p - c_i|), one such map per output
// coordinate; U(r) = r^2 log r^2.
struct TpsModel {
    std::vector<Point2> control_points;
    Eigen::MatrixX2d kernel_weights;  // N x 2
    Eigen::Matrix<double, 3, 2> affine;  // rows: const, x, y
    double lambda = 0.0;
};

inline double tps_kernel(double r) {
    return r > 0.0 ? r * r * std::log(r * r) : 0.0;
}

// Default regularization scale for noisy correspondences.
inline double default_tps_lambda(const std::vector<Point2>& source) {
    const double d = mean_pairwise_distance(source);
    return 1e-3 * d * d;
}

namespace detail {

inline Eigen::MatrixXd tps_kernel_matrix(const std::vector<Point2>& pts) {
    const int n = static_cast<int>(pts.size());
    Eigen::MatrixXd k(n, n);
    for (int i = 0; i < n; ++i) {
        k(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j)
            k(i, j) = k(j, i) = tps_kernel(distance(pts[i], pts[j]));
    }
    return k;
}

}  // namespace detail

// Solves the (N+3)x(N+3) TPS system with lambda on the kernel diagonal.
// With lambda = 0 the fit interpolates the targets exactly.
inline TpsModel fit_tps(const TpsConstraints& constraints, double lambda) {
    if (constraints.source.size() != constraints.target.size())
        throw LengthMismatch("fit_tps: source/target length mismatch");
    if (lambda < 0.0) throw BadParams("fit_tps: lambda must be >= 0");

    // collapse duplicate source control points, keeping the first
    std::vector<Point2> src, tgt;
    for (std::size_t i = 0; i < constraints.source.size(); ++i) {
        bool dup = false;
        for (const auto& s : src)
            if (s == constraints.source[i]) { dup = true; break; }
        if (!dup) {
            src.push_back(constraints.source[i]);
            tgt.push_back(constraints.target[i]);
        }
    }
    const int n = static_cast<int>(src.size());
    if (n < 3) throw DegenerateShape("fit_tps: need at least 3 distinct control points");

    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(n + 3, n + 3);
    sys.topLeftCorner(n, n) = detail::tps_kernel_matrix(src);
    sys.topLeftCorner(n, n).diagonal().array() += lambda;
    for (int i = 0; i < n; ++i) {
        sys(i, n) = sys(n, i) = 1.0;
        sys(i, n + 1) = sys(n + 1, i) = src[i].x;
        sys(i, n + 2) = sys(n + 2, i) = src[i].y;
    }

    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + 3, 2);
    for (int i = 0; i < n; ++i) {
        rhs(i, 0) = tgt[i].x;
        rhs(i, 1) = tgt[i].y;
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    const double pivot_floor = 1e-12 * sys.norm();
    if (std::abs(lu.matrixLU().diagonal().cwiseAbs().minCoeff()) < pivot_floor)
        throw SingularSystem("fit_tps: singular system (collinear or duplicate control points)");
    const Eigen::MatrixXd sol = lu.solve(rhs);

    TpsModel model;
    model.control_points = std::move(src);
    model.kernel_weights = sol.topRows(n);
    model.affine = sol.bottomRows(3);
    model.lambda = lambda;
    return model;
}

inline Point2 warp_point(const TpsModel& model, const Point2& p) {
    double fx = model.affine(0, 0) + model.affine(1, 0) * p.x + model.affine(2, 0) * p.y;
    double fy = model.affine(0, 1) + model.affine(1, 1) * p.x + model.affine(2, 1) * p.y;
    for (std::size_t i = 0; i < model.control_points.size(); ++i) {
        const double u = tps_kernel(distance(p, model.control_points[i]));
        fx += model.kernel_weights(static_cast<int>(i), 0) * u;
        fy += model.kernel_weights(static_cast<int>(i), 1) * u;
    }
    return {fx, fy};
}

inline Shape warp_shape(const TpsModel& model, const Shape& shape) {
    auto pts = shape.all_points();
    for (auto& p : pts) p = warp_point(model, p);
    return shape.with_points(pts);
}

// w' K w summed over both output coordinates; zero exactly for affine maps.
inline double bending_energy(const TpsModel& model) {
    const Eigen::MatrixXd k = detail::tps_kernel_matrix(model.control_points);
    double e = 0.0;
    for (int c = 0; c < 2; ++c) {
        const Eigen::VectorXd w = model.kernel_weights.col(c);
        e += w.dot(k * w);
    }
    return std::max(0.0, e);
}

inline nlohmann::json tps_to_json(const TpsModel& model) {
    nlohmann::json controls = nlohmann::json::array();
    nlohmann::json weights = nlohmann::json::array();
    for (std::size_t i = 0; i < model.control_points.size(); ++i) {
        controls.push_back({model.control_points[i].x, model.control_points[i].y});
        weights.push_back({model.kernel_weights(static_cast<int>(i), 0),
                           model.kernel_weights(static_cast<int>(i), 1)});
    }
    nlohmann::json affine = nlohmann::json::array();
    for (int r = 0; r < 3; ++r)
        affine.push_back({model.affine(r, 0), model.affine(r, 1)});
    return {{"control_points", std::move(controls)},
            {"kernel_weights", std::move(weights)},
            {"affine", std::move(affine)},
            {"lambda", model.lambda}};
}

}  // namespace bsc
