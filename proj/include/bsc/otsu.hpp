#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "bsc/errors.hpp"

namespace bsc {

struct OtsuResult {
    double threshold = 0.0;
    int low_class_count = 0;
    int high_class_count = 0;
    double between_class_variance = 0.0;
};

// Two-class 1-D clustering maximizing between-class variance. Candidate
// thresholds are the distinct input values when there are at most `bins` of
// them (the split search is then exact), otherwise the boundaries of `bins`
// equal-width cells over [min, max]. Class statistics are always computed
// from the exact values. Ties go to the smaller threshold; the low class
// (values <= threshold) is never empty.
inline OtsuResult otsu_threshold(const std::vector<double>& values, int bins = 64) {
    if (values.empty()) throw EmptyInput("otsu_threshold: empty input");
    if (bins < 1) throw BadParams("otsu_threshold: bins must be positive");
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0)
            throw NonFiniteInput("otsu_threshold: values must be finite and >= 0");

    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    const int n = static_cast<int>(sorted.size());
    const double lo = sorted.front(), hi = sorted.back();

    if (lo == hi)
        return {lo, n, 0, 0.0};

    std::vector<double> prefix(n + 1, 0.0);
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + sorted[i];

    // between-class variance of the split {<= t} / {> t}
    auto variance_at = [&](double t) -> std::pair<double, int> {
        const int n0 = static_cast<int>(
            std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
        if (n0 == 0 || n0 == n) return {-1.0, n0};
        const double mu0 = prefix[n0] / n0;
        const double mu1 = (prefix[n] - prefix[n0]) / (n - n0);
        const double w0 = static_cast<double>(n0) / n;
        const double diff = mu0 - mu1;
        return {w0 * (1.0 - w0) * diff * diff, n0};
    };

    std::vector<double> candidates;
    std::vector<double> distinct(sorted);
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (static_cast<int>(distinct.size()) <= bins) {
        candidates.assign(distinct.begin(), distinct.end() - 1);
    } else {
        for (int k = 1; k < bins; ++k)
            candidates.push_back(lo + (hi - lo) * k / bins);
    }

    if (candidates.empty()) candidates.push_back(lo);  // bins == 1

    OtsuResult best{candidates.front(), 0, 0, -1.0};
    for (double t : candidates) {
        const auto [var, n0] = variance_at(t);
        if (var > best.between_class_variance) {
            best.threshold = t;
            best.between_class_variance = var;
            best.low_class_count = n0;
        }
    }
    best.high_class_count = n - best.low_class_count;
    return best;
}

}  // namespace bsc
