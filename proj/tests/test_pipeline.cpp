#include <map>
#include <random>

#include <doctest.h>

#include "bsc/generators.hpp"
#include "bsc/io.hpp"
#include "bsc/pipeline.hpp"

using namespace bsc;

#ifndef BSC_FIXTURE_DIR
#define BSC_FIXTURE_DIR "fixtures"
#endif

TEST_CASE("self match scores zero with identity correspondences") {
    std::mt19937 rng(201);
    std::uniform_int_distribution<unsigned> seed(0, 1u << 30);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = generate_shape(ShapeFamily::Blob, 40, 0.05, seed(rng));
        const auto r = match_shapes(s, s);
        CHECK(r.score <= 1e-9);
        for (const auto& p : r.final_correspondences.kept)
            CHECK(p.source_index == p.target_index);
    }
}

TEST_CASE("translated copy scores zero") {
    const auto s = generate_shape(ShapeFamily::Star, 48, 0.03, 11);
    const auto r = match_shapes(s, translate(s, 40.0, 17.0));
    CHECK(r.score <= 1e-9);
}

TEST_CASE("iterations 0 reduces to a single descriptor pass") {
    const auto a = generate_shape(ShapeFamily::Circle, 30, 0.05, 21);
    const auto b = generate_shape(ShapeFamily::Blob, 34, 0.05, 22);
    PipelineConfig cfg;
    cfg.iterations = 0;

    const auto r = match_shapes(a, b, cfg);
    CHECK(r.per_iteration.empty());
    CHECK(r.warp_models.empty());
    const auto m = cost_matrix(compute_descriptors(a), compute_descriptors(b));
    CHECK(r.score == doctest::Approx(bidirectional_cost(m)).epsilon(1e-15));
}

TEST_CASE("score is symmetric at iteration 0") {
    std::mt19937 rng(205);
    std::uniform_int_distribution<unsigned> seed(0, 1u << 30);
    PipelineConfig cfg;
    cfg.iterations = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = generate_shape(ShapeFamily::Blob, 25, 0.05, seed(rng));
        const auto b = generate_shape(ShapeFamily::Blob, 31, 0.05, seed(rng));
        const auto rab = match_shapes(a, b, cfg);
        const auto rba = match_shapes(b, a, cfg);
        CHECK(rab.score == doctest::Approx(rba.score).epsilon(1e-12));
    }
}

TEST_CASE("per-iteration records are internally consistent") {
    const auto a = generate_shape(ShapeFamily::Square, 40, 0.04, 31);
    const auto b = generate_shape(ShapeFamily::Star, 44, 0.04, 32);
    const auto r = match_shapes(a, b);
    REQUIRE(r.per_iteration.size() == 3);
    REQUIRE(r.warp_models.size() == 3);
    for (const auto& it : r.per_iteration) {
        CHECK(it.kept_forward >= 1);
        CHECK(it.kept_backward >= 1);
        const Direction expect =
            it.pruned_forward_cost <= it.pruned_backward_cost ? Direction::Forward
                                                              : Direction::Backward;
        CHECK(it.chosen == expect);
    }
}

TEST_CASE("matching is deterministic") {
    const auto a = generate_shape(ShapeFamily::Blob, 36, 0.05, 41);
    const auto b = generate_shape(ShapeFamily::Blob, 30, 0.05, 42);
    const auto r1 = match_shapes(a, b);
    const auto r2 = match_shapes(a, b);
    CHECK(r1.score == r2.score);
    CHECK(match_result_to_json(r1).dump() == match_result_to_json(r2).dump());
}

TEST_CASE("fig-1 fixtures produce a non-injective correspondence map") {
    const auto a = load_points(read_file(std::string(BSC_FIXTURE_DIR) + "/fig1_rect.csv"));
    const auto b =
        load_points(read_file(std::string(BSC_FIXTURE_DIR) + "/fig1_rect_notch.csv"));
    const auto r = match_shapes(a, b);
    std::map<int, int> target_hits;
    for (const auto& p : r.final_correspondences.kept) ++target_hits[p.target_index];
    bool many_to_one = false;
    for (const auto& [t, hits] : target_hits)
        if (hits >= 2) many_to_one = true;
    CHECK(many_to_one);
}

TEST_CASE("max_points cap subsamples huge inputs") {
    const auto big = generate_shape(ShapeFamily::Circle, 500, 0.02, 51);
    PipelineConfig cfg;
    cfg.iterations = 1;
    cfg.max_points = 80;
    const auto r = match_shapes(big, big, cfg);
    CHECK(static_cast<int>(r.final_correspondences.kept.size()) <= 80);
}

TEST_CASE("knn classifies an exact gallery member") {
    std::vector<Shape> gallery;
    for (unsigned s = 0; s < 3; ++s) {
        auto circle = generate_shape(ShapeFamily::Circle, 30, 0.05, s);
        auto star = generate_shape(ShapeFamily::Star, 30, 0.05, s);
        gallery.push_back(std::move(circle));
        gallery.push_back(std::move(star));
    }
    const auto query = gallery[3];  // a star
    CHECK(classify_knn(query, gallery, 1) == "star");
}

TEST_CASE("singleton gallery always wins") {
    std::vector<Shape> gallery{generate_shape(ShapeFamily::Square, 20, 0.0, 1)};
    const auto query = generate_shape(ShapeFamily::Circle, 25, 0.0, 2);
    CHECK(classify_knn(query, gallery, 5) == "square");
}

TEST_CASE("empty gallery throws") {
    CHECK_THROWS_AS(
        classify_knn(generate_shape(ShapeFamily::Circle, 10, 0.0, 1), {}, 1),
        EmptyGallery);
}
