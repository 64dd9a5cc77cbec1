#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsc/correspondence.hpp"
#include "bsc/generators.hpp"
#include "bsc/hungarian.hpp"

namespace bsc {

enum class BenchAlgorithm { BscCorrespondence, Hungarian };

inline const char* to_string(BenchAlgorithm a) {
    return a == BenchAlgorithm::BscCorrespondence ? "bsc" : "hungarian";
}

struct BenchRecord {
    BenchAlgorithm algorithm;
    int size = 0;
    double wall_time = 0.0;  // min over repetitions, seconds
    int repetitions = 0;
};

struct BenchReport {
    std::vector<BenchRecord> records;
    std::optional<double> bsc_slope;        // absent with < 2 sizes
    std::optional<double> hungarian_slope;
};

namespace detail {

inline std::optional<double> loglog_slope(const std::vector<BenchRecord>& records,
                                          BenchAlgorithm alg) {
    std::vector<double> xs, ys;
    for (const auto& r : records)
        if (r.algorithm == alg && r.wall_time > 0.0) {
            xs.push_back(std::log(static_cast<double>(r.size)));
            ys.push_back(std::log(r.wall_time));
        }
    if (xs.size() < 2) return std::nullopt;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return sxy / sxx;
}

}  // namespace detail

// Times the BSC correspondence phase (cost-matrix fill + both argmin
// sweeps) and Hungarian on the same matrices, over matched shape pairs of
// each size. Wall time is the minimum over repetitions.
inline BenchReport bench_scaling(const std::vector<int>& sizes,
                                 const std::set<BenchAlgorithm>& algorithms,
                                 int repetitions, unsigned seed = 1) {
    if (repetitions < 1) throw BadParams("bench_scaling: repetitions must be >= 1");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw BadParams("bench_scaling: sizes must be strictly increasing");

    using clock = std::chrono::steady_clock;
    auto seconds_since = [](clock::time_point t0) {
        return std::chrono::duration<double>(clock::now() - t0).count();
    };

    BenchReport report;
    for (int size : sizes) {
        const Shape a = generate_shape(ShapeFamily::Circle, size, 0.02, seed);
        const Shape b = generate_shape(ShapeFamily::Blob, size, 0.02, seed + 1);
        const DescriptorSet da = compute_descriptors(a);
        const DescriptorSet db = compute_descriptors(b);
        const CostMatrix m = cost_matrix(da, db);

        if (algorithms.count(BenchAlgorithm::BscCorrespondence)) {
            double best = std::numeric_limits<double>::infinity();
            for (int r = 0; r < repetitions; ++r) {
                const auto t0 = clock::now();
                const CostMatrix mm = cost_matrix(da, db);
                volatile double sink = forward_correspondences(mm).average_cost +
                                       backward_correspondences(mm).average_cost;
                (void)sink;
                best = std::min(best, seconds_since(t0));
            }
            report.records.push_back(
                {BenchAlgorithm::BscCorrespondence, size, best, repetitions});
        }
        if (algorithms.count(BenchAlgorithm::Hungarian)) {
            double best = std::numeric_limits<double>::infinity();
            for (int r = 0; r < repetitions; ++r) {
                const auto t0 = clock::now();
                volatile double sink = hungarian(m).total_cost;
                (void)sink;
                best = std::min(best, seconds_since(t0));
            }
            report.records.push_back({BenchAlgorithm::Hungarian, size, best, repetitions});
        }
    }
    report.bsc_slope = detail::loglog_slope(report.records, BenchAlgorithm::BscCorrespondence);
    report.hungarian_slope = detail::loglog_slope(report.records, BenchAlgorithm::Hungarian);
    return report;
}

inline std::string bench_to_csv(const BenchReport& report) {
    std::string csv = "algorithm,size,wall_time_s,repetitions\n";
    for (const auto& r : report.records) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s,%d,%.9g,%d\n", to_string(r.algorithm),
                      r.size, r.wall_time, r.repetitions);
        csv += buf;
    }
    return csv;
}

inline nlohmann::json bench_summary_json(const BenchReport& report) {
    nlohmann::json slopes;
    slopes["bsc"] = report.bsc_slope ? nlohmann::json(*report.bsc_slope)
                                     : nlohmann::json(nullptr);
    slopes["hungarian"] = report.hungarian_slope
                              ? nlohmann::json(*report.hungarian_slope)
                              : nlohmann::json(nullptr);
    return {{"slopes", std::move(slopes)}};
}

}  // namespace bsc
