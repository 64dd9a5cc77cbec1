#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsc/correspondence.hpp"
#include "bsc/tps.hpp"

namespace bsc {

struct PipelineConfig {
    int iterations = 3;
    int tps_sample_count = 100;  // N = min(kept, this)
    double lambda = -1.0;        // < 0 means the TPS default scale
    ShapeContextParams sc_params;
    bool prune_correspondences = true;
    int max_points = 0;  // 0 = no cap; engineering guard for huge inputs
};

struct IterationRecord {
    Direction chosen = Direction::Forward;
    double bidirectional_cost = 0.0;  // unpruned
    double pruned_forward_cost = 0.0;
    double pruned_backward_cost = 0.0;
    int kept_forward = 0;   // u
    int kept_backward = 0;  // v
};

struct MatchResult {
    double score = 0.0;  // final unpruned bidirectional cost
    std::vector<IterationRecord> per_iteration;
    PrunedCorrespondenceSet final_correspondences;
    std::vector<TpsModel> warp_models;
};

namespace detail {

// uniform-by-index subsample of k items out of n
inline std::vector<int> subsample_indices(int n, int k) {
    std::vector<int> idx;
    if (k >= n) {
        idx.resize(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        return idx;
    }
    idx.reserve(k);
    for (int i = 0; i < k; ++i)
        idx.push_back(static_cast<int>(static_cast<long>(i) * n / k));
    return idx;
}

inline Shape maybe_cap(const Shape& s, int max_points) {
    if (max_points <= 0 || static_cast<int>(s.point_count()) <= max_points) return s;
    const auto pts = s.all_points();
    const auto idx = subsample_indices(static_cast<int>(pts.size()), max_points);
    Shape out;
    out.label = s.label;
    Contour c;
    c.closed = true;
    for (int i : idx) c.points.push_back(pts[i]);
    out.contours.push_back(std::move(c));
    return out;
}

}  // namespace detail

// Iterated shape-context / TPS matching. Each round matches the current
// (possibly warped) shapes, prunes both directions, picks the cheaper
// pruned direction, fits a TPS on a subsample of its kept pairs and warps
// that direction's source shape toward the other. The final score is one
// extra shape-context pass with no warp after it, using the unpruned
// bidirectional cost.
inline MatchResult match_shapes(const Shape& p, const Shape& q,
                                const PipelineConfig& cfg = {}) {
    Shape cur_p = detail::maybe_cap(p, cfg.max_points);
    Shape cur_q = detail::maybe_cap(q, cfg.max_points);

    MatchResult result;
    for (int iter = 0; iter < cfg.iterations; ++iter) {
        const DescriptorSet dp = compute_descriptors(cur_p, cfg.sc_params);
        const DescriptorSet dq = compute_descriptors(cur_q, cfg.sc_params);
        const CostMatrix m = cost_matrix(dp, dq);

        const CorrespondenceSet fwd = forward_correspondences(m);
        const CorrespondenceSet bwd = backward_correspondences(m);

        PrunedCorrespondenceSet pf, pb;
        if (cfg.prune_correspondences) {
            pf = prune(fwd);
            pb = prune(bwd);
        } else {
            pf = {Direction::Forward, fwd.pairs, 1.0, fwd.average_cost,
                  static_cast<int>(fwd.pairs.size())};
            pb = {Direction::Backward, bwd.pairs, 1.0, bwd.average_cost,
                  static_cast<int>(bwd.pairs.size())};
        }
        const Direction dir = select_direction(pf, pb);

        IterationRecord rec;
        rec.chosen = dir;
        rec.bidirectional_cost = 0.5 * (fwd.average_cost + bwd.average_cost);
        rec.pruned_forward_cost = pf.pruned_average_cost;
        rec.pruned_backward_cost = pb.pruned_average_cost;
        rec.kept_forward = pf.kept_count;
        rec.kept_backward = pb.kept_count;
        result.per_iteration.push_back(rec);

        // control pairs: kept source points -> their matched targets
        const PrunedCorrespondenceSet& chosen = dir == Direction::Forward ? pf : pb;
        const auto src_pts =
            (dir == Direction::Forward ? cur_p : cur_q).all_points();
        const auto tgt_pts =
            (dir == Direction::Forward ? cur_q : cur_p).all_points();

        const int want = std::max(3, std::min(cfg.tps_sample_count, chosen.kept_count));
        const auto picks = detail::subsample_indices(chosen.kept_count, want);
        TpsConstraints constraints;
        for (int k : picks) {
            const auto& pair = chosen.kept[k];
            constraints.source.push_back(src_pts[pair.source_index]);
            constraints.target.push_back(tgt_pts[pair.target_index]);
        }
        const double lambda =
            cfg.lambda >= 0.0 ? cfg.lambda : default_tps_lambda(constraints.source);
        const TpsModel model = fit_tps(constraints, lambda);
        if (dir == Direction::Forward)
            cur_p = warp_shape(model, cur_p);
        else
            cur_q = warp_shape(model, cur_q);
        result.warp_models.push_back(model);
    }

    // final shape-context pass
    const DescriptorSet dp = compute_descriptors(cur_p, cfg.sc_params);
    const DescriptorSet dq = compute_descriptors(cur_q, cfg.sc_params);
    const CostMatrix m = cost_matrix(dp, dq);
    result.score = bidirectional_cost(m);

    const CorrespondenceSet fwd = forward_correspondences(m);
    const CorrespondenceSet bwd = backward_correspondences(m);
    PrunedCorrespondenceSet pf = cfg.prune_correspondences
                                     ? prune(fwd)
                                     : PrunedCorrespondenceSet{
                                           Direction::Forward, fwd.pairs, 1.0,
                                           fwd.average_cost,
                                           static_cast<int>(fwd.pairs.size())};
    PrunedCorrespondenceSet pb = cfg.prune_correspondences
                                     ? prune(bwd)
                                     : PrunedCorrespondenceSet{
                                           Direction::Backward, bwd.pairs, 1.0,
                                           bwd.average_cost,
                                           static_cast<int>(bwd.pairs.size())};
    result.final_correspondences = select_direction(pf, pb) == Direction::Forward ? pf : pb;
    return result;
}

// Majority label among the k nearest gallery shapes by match score. Ties
// break by smaller mean score, then by gallery order.
inline std::string classify_knn(const Shape& query, const std::vector<Shape>& gallery,
                                int k, const PipelineConfig& cfg = {}) {
    if (gallery.empty()) throw EmptyGallery("classify_knn: empty gallery");
    if (k < 1) throw BadParams("classify_knn: k must be >= 1");

    std::vector<std::pair<double, int>> scored;  // (score, gallery index)
    scored.reserve(gallery.size());
    for (std::size_t g = 0; g < gallery.size(); ++g)
        scored.emplace_back(match_shapes(query, gallery[g], cfg).score,
                            static_cast<int>(g));
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    const int kk = std::min<int>(k, static_cast<int>(scored.size()));
    struct Tally { int votes = 0; double score_sum = 0.0; int first_index = 0; };
    std::map<std::string, Tally> tallies;
    for (int i = 0; i < kk; ++i) {
        const auto& shape = gallery[scored[i].second];
        const std::string label = shape.label.value_or("");
        auto [it, inserted] = tallies.try_emplace(label);
        if (inserted) it->second.first_index = scored[i].second;
        it->second.votes += 1;
        it->second.score_sum += scored[i].first;
    }

    const Tally* best = nullptr;
    const std::string* best_label = nullptr;
    for (const auto& [label, t] : tallies) {
        bool wins = best == nullptr;
        if (!wins && t.votes != best->votes) wins = t.votes > best->votes;
        else if (!wins) {
            const double mean = t.score_sum / t.votes;
            const double best_mean = best->score_sum / best->votes;
            if (mean != best_mean) wins = mean < best_mean;
            else wins = t.first_index < best->first_index;
        }
        if (wins) { best = &t; best_label = &label; }
    }
    return *best_label;
}

inline nlohmann::json match_result_to_json(const MatchResult& r) {
    nlohmann::json iters = nlohmann::json::array();
    for (const auto& it : r.per_iteration)
        iters.push_back({{"direction", to_string(it.chosen)},
                         {"bidirectional_cost", it.bidirectional_cost},
                         {"pruned_forward_cost", it.pruned_forward_cost},
                         {"pruned_backward_cost", it.pruned_backward_cost},
                         {"kept_forward", it.kept_forward},
                         {"kept_backward", it.kept_backward}});
    nlohmann::json kept = nlohmann::json::array();
    for (const auto& pr : r.final_correspondences.kept)
        kept.push_back({{"p", pr.source_index}, {"q", pr.target_index}, {"cost", pr.cost}});
    nlohmann::json warps = nlohmann::json::array();
    for (const auto& w : r.warp_models) warps.push_back(tps_to_json(w));
    return {{"score", r.score},
            {"per_iteration", std::move(iters)},
            {"final_correspondences",
             {{"direction", to_string(r.final_correspondences.direction)},
              {"threshold", r.final_correspondences.threshold},
              {"kept", std::move(kept)},
              {"pruned_average_cost", r.final_correspondences.pruned_average_cost}}},
            {"warp_models", std::move(warps)}};
}

}  // namespace bsc
