// bsc: 2-d shape correspondence and matching CLI.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsc/bsc.hpp"

namespace {

bsc::Shape load_shape(const std::string& path, int threshold) {
    const std::string data = bsc::read_file(path);
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".pgm") == 0)
        return bsc::extract_contours(bsc::load_pgm(data), threshold);
    return bsc::load_points(data);
}

std::string format_score(double score) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", score);
    return buf;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

// gallery labels come from file stems with a trailing _<number> stripped
std::string label_from_stem(const std::string& stem) {
    const auto us = stem.rfind('_');
    if (us != std::string::npos && us + 1 < stem.size() &&
        stem.find_first_not_of("0123456789", us + 1) == std::string::npos)
        return stem.substr(0, us);
    return stem;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bidirectional shape correspondence toolkit"};
    app.require_subcommand(1);
    app.set_config("--config");

    // extract
    auto* extract = app.add_subcommand("extract", "Extract contours from a PGM image");
    std::string ex_image, ex_out;
    int ex_threshold = 128;
    extract->add_option("image", ex_image, "input PGM")->required();
    extract->add_option("--threshold", ex_threshold, "foreground threshold [0,255]");
    extract->add_option("-o,--output", ex_out, "output CSV")->required();

    // correspond
    auto* correspond = app.add_subcommand("correspond",
                                          "One-pass correspondences and match score");
    std::string co_a, co_b, co_json, co_svg;
    bool co_prune = false;
    int co_threshold = 128;
    correspond->add_option("a", co_a)->required();
    correspond->add_option("b", co_b)->required();
    correspond->add_flag("--prune", co_prune, "report the pruned correspondence set");
    correspond->add_option("--json", co_json, "write CorrespondenceSet JSON");
    correspond->add_option("--svg", co_svg, "write correspondence overlay SVG");
    correspond->add_option("--threshold", co_threshold);

    // match
    auto* match = app.add_subcommand("match", "Full iterated matching pipeline");
    std::string ma_a, ma_b, ma_json, ma_svg;
    int ma_threshold = 128;
    bsc::PipelineConfig ma_cfg;
    match->add_option("a", ma_a)->required();
    match->add_option("b", ma_b)->required();
    match->add_option("--iterations", ma_cfg.iterations);
    match->add_option("--lambda", ma_cfg.lambda);
    match->add_option("--tps-samples", ma_cfg.tps_sample_count);
    match->add_option("--max-points", ma_cfg.max_points);
    match->add_option("--radial-bins", ma_cfg.sc_params.radial_bins);
    match->add_option("--angular-bins", ma_cfg.sc_params.angular_bins);
    match->add_flag("--rotation-invariant", ma_cfg.sc_params.rotation_invariant);
    match->add_option("--json", ma_json, "write MatchResult JSON");
    match->add_option("--svg", ma_svg, "write final correspondence overlay SVG");
    match->add_option("--threshold", ma_threshold);

    // warp
    auto* warp = app.add_subcommand("warp", "Warp a toward b through the fitted pipeline");
    std::string wa_a, wa_b, wa_out;
    int wa_threshold = 128;
    bsc::PipelineConfig wa_cfg;
    warp->add_option("a", wa_a)->required();
    warp->add_option("b", wa_b)->required();
    warp->add_option("-o,--output", wa_out, "output CSV of warped points")->required();
    warp->add_option("--iterations", wa_cfg.iterations);
    warp->add_option("--lambda", wa_cfg.lambda);
    warp->add_option("--threshold", wa_threshold);

    // classify
    auto* classify = app.add_subcommand("classify", "k-NN label for a query shape");
    std::string cl_gallery, cl_query;
    int cl_k = 1;
    bsc::PipelineConfig cl_cfg;
    classify->add_option("--gallery", cl_gallery, "directory of CSV shapes")->required();
    classify->add_option("--query", cl_query)->required();
    classify->add_option("-k", cl_k);
    classify->add_option("--iterations", cl_cfg.iterations);

    // bench
    auto* bench = app.add_subcommand("bench", "Scaling benchmark");
    std::string be_sizes = "200,400,800,1600", be_algos = "bsc,hungarian", be_out;
    int be_reps = 5;
    unsigned be_seed = 1;
    bench->add_option("--sizes", be_sizes, "comma-separated sizes");
    bench->add_option("--algos", be_algos, "bsc,hungarian");
    bench->add_option("--reps", be_reps);
    bench->add_option("--seed", be_seed);
    bench->add_option("-o,--output", be_out, "CSV output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*extract) {
            const auto shape = load_shape(ex_image, ex_threshold);
            bsc::write_file(ex_out, bsc::save_points(shape));
        } else if (*correspond) {
            const auto a = load_shape(co_a, co_threshold);
            const auto b = load_shape(co_b, co_threshold);
            const auto da = bsc::compute_descriptors(a);
            const auto db = bsc::compute_descriptors(b);
            const auto m = bsc::cost_matrix(da, db);
            const auto fwd = bsc::forward_correspondences(m);
            const auto bwd = bsc::backward_correspondences(m);
            const auto pf = bsc::prune(fwd);
            const auto pb = bsc::prune(bwd);
            const bsc::Direction dir = bsc::select_direction(pf, pb);
            const auto& all = dir == bsc::Direction::Forward ? fwd : bwd;
            const auto& pruned = dir == bsc::Direction::Forward ? pf : pb;
            const double score = 0.5 * (fwd.average_cost + bwd.average_cost);
            std::cout << "score " << format_score(score) << "\n";
            if (!co_json.empty())
                bsc::write_file(co_json,
                                bsc::correspondence_to_json(all, co_prune ? &pruned : nullptr)
                                    .dump(2) + "\n");
            if (!co_svg.empty())
                bsc::write_file(co_svg, bsc::correspondence_svg(a, b, all, pruned));
        } else if (*match) {
            const auto a = load_shape(ma_a, ma_threshold);
            const auto b = load_shape(ma_b, ma_threshold);
            const auto result = bsc::match_shapes(a, b, ma_cfg);
            const auto j = bsc::match_result_to_json(result);
            std::cout << j.dump(2) << "\n";
            if (!ma_json.empty()) bsc::write_file(ma_json, j.dump(2) + "\n");
            if (!ma_svg.empty()) {
                // redo the final pass to get the full (unpruned) pair list
                const auto da = bsc::compute_descriptors(a, ma_cfg.sc_params);
                const auto db = bsc::compute_descriptors(b, ma_cfg.sc_params);
                const auto m = bsc::cost_matrix(da, db);
                const auto all = result.final_correspondences.direction ==
                                         bsc::Direction::Forward
                                     ? bsc::forward_correspondences(m)
                                     : bsc::backward_correspondences(m);
                bsc::write_file(ma_svg, bsc::correspondence_svg(
                                            a, b, all, result.final_correspondences));
            }
        } else if (*warp) {
            const auto a = load_shape(wa_a, wa_threshold);
            const auto b = load_shape(wa_b, wa_threshold);
            const auto result = bsc::match_shapes(a, b, wa_cfg);
            bsc::Shape warped = a;
            for (std::size_t i = 0; i < result.warp_models.size(); ++i) {
                if (result.per_iteration[i].chosen == bsc::Direction::Forward)
                    warped = bsc::warp_shape(result.warp_models[i], warped);
            }
            bsc::write_file(wa_out, bsc::save_points(warped));
        } else if (*classify) {
            std::vector<bsc::Shape> gallery;
            std::vector<std::filesystem::path> files;
            for (const auto& entry : std::filesystem::directory_iterator(cl_gallery))
                if (entry.path().extension() == ".csv") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) {
                bsc::Shape s = bsc::load_points(bsc::read_file(f.string()));
                s.label = label_from_stem(f.stem().string());
                gallery.push_back(std::move(s));
            }
            const auto query = load_shape(cl_query, 128);
            std::cout << bsc::classify_knn(query, gallery, cl_k, cl_cfg) << "\n";
        } else if (*bench) {
            std::set<bsc::BenchAlgorithm> algos;
            std::stringstream ss(be_algos);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok == "bsc") algos.insert(bsc::BenchAlgorithm::BscCorrespondence);
                else if (tok == "hungarian") algos.insert(bsc::BenchAlgorithm::Hungarian);
                else throw CLI::ValidationError("--algos", "unknown algorithm " + tok);
            }
            const auto report =
                bsc::bench_scaling(parse_int_list(be_sizes), algos, be_reps, be_seed);
            bsc::write_file(be_out, bsc::bench_to_csv(report));
            std::cout << bsc::bench_summary_json(report).dump(2) << "\n";
        }
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const bsc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
