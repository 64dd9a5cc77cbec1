#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bsc/otsu.hpp"
#include "bsc/shape_context.hpp"

namespace bsc {

enum class Direction { Forward, Backward };

inline const char* to_string(Direction d) {
    return d == Direction::Forward ? "forward" : "backward";
}

struct CorrespondencePair {
    int source_index = 0;
    int target_index = 0;
    double cost = 0.0;
};

// One best match per source point plus the average cost of the sweep.
struct CorrespondenceSet {
    Direction direction = Direction::Forward;
    std::vector<CorrespondencePair> pairs;
    double average_cost = 0.0;
};

// The good-match subset after two-class clustering of the costs.
struct PrunedCorrespondenceSet {
    Direction direction = Direction::Forward;
    std::vector<CorrespondencePair> kept;
    double threshold = 0.0;
    double pruned_average_cost = 0.0;
    int kept_count = 0;
};

// Each row's minimum; ties break to the lowest column.
inline CorrespondenceSet forward_correspondences(const CostMatrix& m) {
    if (m.rows == 0 || m.cols == 0)
        throw EmptyMatrix("forward_correspondences: empty matrix");
    CorrespondenceSet cs;
    cs.direction = Direction::Forward;
    cs.pairs.reserve(m.rows);
    double total = 0.0;
    for (int i = 0; i < m.rows; ++i) {
        int best = 0;
        for (int j = 1; j < m.cols; ++j)
            if (m.at(i, j) < m.at(i, best)) best = j;
        cs.pairs.push_back({i, best, m.at(i, best)});
        total += m.at(i, best);
    }
    cs.average_cost = total / m.rows;
    return cs;
}

// Each column's minimum; ties break to the lowest row.
inline CorrespondenceSet backward_correspondences(const CostMatrix& m) {
    if (m.rows == 0 || m.cols == 0)
        throw EmptyMatrix("backward_correspondences: empty matrix");
    CorrespondenceSet cs;
    cs.direction = Direction::Backward;
    cs.pairs.reserve(m.cols);
    double total = 0.0;
    for (int j = 0; j < m.cols; ++j) {
        int best = 0;
        for (int i = 1; i < m.rows; ++i)
            if (m.at(i, j) < m.at(best, j)) best = i;
        cs.pairs.push_back({j, best, m.at(best, j)});
        total += m.at(best, j);
    }
    cs.average_cost = total / m.cols;
    return cs;
}

// Mean of the unpruned forward and backward averages. Clustering never
// enters this score.
inline double bidirectional_cost(const CostMatrix& m) {
    if (m.rows == 0 || m.cols == 0)
        throw EmptyMatrix("bidirectional_cost: empty matrix");
    return 0.5 * (forward_correspondences(m).average_cost +
                  backward_correspondences(m).average_cost);
}

// Otsu-split the cost array and keep the low group (cost <= threshold).
inline PrunedCorrespondenceSet prune(const CorrespondenceSet& cs, int otsu_bins = 64) {
    if (cs.pairs.empty()) throw EmptyInput("prune: empty correspondence set");
    std::vector<double> costs;
    costs.reserve(cs.pairs.size());
    for (const auto& p : cs.pairs) costs.push_back(p.cost);

    const OtsuResult otsu = otsu_threshold(costs, otsu_bins);

    PrunedCorrespondenceSet out;
    out.direction = cs.direction;
    out.threshold = otsu.threshold;
    double total = 0.0;
    for (const auto& p : cs.pairs) {
        if (p.cost <= otsu.threshold) {
            out.kept.push_back(p);
            total += p.cost;
        }
    }
    out.kept_count = static_cast<int>(out.kept.size());
    out.pruned_average_cost = total / out.kept_count;
    return out;
}

// Forward wins ties.
inline Direction select_direction(const PrunedCorrespondenceSet& pruned_fwd,
                                  const PrunedCorrespondenceSet& pruned_bwd) {
    return pruned_fwd.pruned_average_cost <= pruned_bwd.pruned_average_cost
               ? Direction::Forward
               : Direction::Backward;
}

inline nlohmann::json correspondence_to_json(const CorrespondenceSet& cs,
                                             const PrunedCorrespondenceSet* pruned = nullptr) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : cs.pairs)
        pairs.push_back({{"p", p.source_index}, {"q", p.target_index}, {"cost", p.cost}});
    nlohmann::json j{{"direction", to_string(cs.direction)},
                     {"pairs", std::move(pairs)},
                     {"average_cost", cs.average_cost}};
    if (pruned) {
        nlohmann::json kept = nlohmann::json::array();
        for (const auto& p : pruned->kept)
            kept.push_back({{"p", p.source_index}, {"q", p.target_index}, {"cost", p.cost}});
        j["pruned"] = {{"threshold", pruned->threshold},
                       {"kept", std::move(kept)},
                       {"pruned_average_cost", pruned->pruned_average_cost}};
    }
    return j;
}

}  // namespace bsc
