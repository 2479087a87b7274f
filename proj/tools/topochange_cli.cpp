#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "topochange/errors.hpp"
#include "topochange/geometry.hpp"
#include "topochange/gmm.hpp"
#include "topochange/io.hpp"
#include "topochange/landscape.hpp"
#include "topochange/moments.hpp"
#include "topochange/persistence.hpp"
#include "topochange/pipeline.hpp"
#include "topochange/pljs.hpp"

namespace tc = topochange;

namespace {

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        tc::write_text_file(out, text);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topological change-point detection with persistence landscapes"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    std::vector<int> degrees{0, 1};
    int layers = 3;
    double gamma = 0.0;
    double theta = 0.011;
    std::size_t js_grid = 4096;
    std::size_t shuffles = 200;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    double percentile = 95.0;
    bool skip_header = false;
    std::string out_dir;
    std::string out;

    // diagram
    auto* diagram = app.add_subcommand("diagram", "Vietoris-Rips persistence diagram of a point cloud");
    std::string cloud_path;
    double cutoff = std::numeric_limits<double>::infinity();
    std::vector<int> diagram_degrees{0};
    diagram->add_option("cloud", cloud_path, "CSV point cloud")->required()->check(CLI::ExistingFile);
    diagram->add_option("--degrees", diagram_degrees, "Homology degrees")->delimiter(',');
    diagram->add_option("--cutoff", cutoff, "Filtration cutoff (default: none)");
    diagram->add_flag("--skip-header", skip_header, "Ignore the first CSV line");
    diagram->add_option("--out-dir", out_dir, "Write diagram_H<l>.json files here");

    // landscape
    auto* landscape = app.add_subcommand("landscape", "Landscape layers of a diagram as CSV");
    std::string diagram_path;
    double landscape_cutoff = 0.0;
    landscape->add_option("diagram", diagram_path, "Diagram JSON")->required()->check(CLI::ExistingFile);
    landscape->add_option("--layers", layers, "Number of layers M");
    landscape->add_option("--cutoff", landscape_cutoff, "Domain [0, S] (default: the diagram cutoff)");
    landscape->add_option("--out", out, "Output CSV (default: stdout)");

    // pljs
    auto* pljs = app.add_subcommand("pljs", "PL+JS statistic between two point clouds");
    std::vector<std::string> pair_paths;
    pljs->add_option("clouds", pair_paths, "Two CSV point clouds")->required()->expected(2)->check(CLI::ExistingFile);
    pljs->add_option("--degrees", degrees, "Homology degrees")->delimiter(',');
    pljs->add_option("--layers", layers, "Number of layers M");
    pljs->add_option("--gamma", gamma, "Uniform mixing weight");
    pljs->add_option("--theta", theta, "Mass regularization");
    pljs->add_option("--js-grid", js_grid, "Minimum number of JS integration nodes");
    pljs->add_option("--percentile", percentile, "Rescaling percentile");
    pljs->add_flag("--skip-header", skip_header, "Ignore the first CSV line");

    // test
    auto* test = app.add_subcommand("test", "Permutation tests on adjacent windows");
    std::vector<std::string> window_paths;
    std::string config_path;
    test->add_option("windows", window_paths, "CSV files, one per window, in order")->required()->check(CLI::ExistingFile);
    test->add_option("--config", config_path, "JSON test configuration or earlier report")->check(CLI::ExistingFile);
    auto* t_degrees = test->add_option("--degrees", degrees, "Homology degrees")->delimiter(',');
    auto* t_layers = test->add_option("--layers", layers, "Number of layers M");
    auto* t_gamma = test->add_option("--gamma", gamma, "Uniform mixing weight");
    auto* t_theta = test->add_option("--theta", theta, "Mass regularization");
    auto* t_shuffles = test->add_option("--shuffles", shuffles, "Number of Monte Carlo shuffles");
    auto* t_alpha = test->add_option("--alpha", alpha, "Family-wise level");
    auto* t_seed = test->add_option("--seed", seed, "Random seed");
    auto* t_percentile = test->add_option("--percentile", percentile, "Rescaling percentile");
    auto* t_grid = test->add_option("--js-grid", js_grid, "Minimum number of JS integration nodes");
    test->add_flag("--skip-header", skip_header, "Ignore the first CSV line");
    test->add_option("--out-dir", out_dir, "Write report.json and report.csv here");

    // gmm-sim
    auto* gmm_sim = app.add_subcommand("gmm-sim", "Variance-scaling experiment for a Gaussian mixture");
    std::string spec_path;
    std::vector<double> etas{1.0, 2.0, 4.0, 8.0};
    std::size_t n_points = 50;
    std::size_t reps = 20;
    std::vector<int> sim_degrees{0, 1};
    gmm_sim->add_option("--spec", spec_path, "GMM spec JSON")->required()->check(CLI::ExistingFile);
    gmm_sim->add_option("--etas", etas, "Variance scaling factors")->delimiter(',');
    gmm_sim->add_option("--n", n_points, "Points per sample");
    gmm_sim->add_option("--reps", reps, "Repetitions per eta");
    gmm_sim->add_option("--degrees", sim_degrees, "Homology degrees (0 and/or 1)")->delimiter(',');
    gmm_sim->add_option("--seed", seed, "Random seed");
    gmm_sim->add_option("--out", out, "Output CSV (default: stdout)");

    // moments
    auto* moments = app.add_subcommand("moments", "Moment constants and Monte Carlo tail-bound check");
    std::uint64_t big_n = 30;
    int ell = 0;
    double p = 2.0;
    double epsilon = 0.05;
    bool verify = false;
    std::vector<double> t_values;
    std::size_t trials = 10000;
    std::vector<double> tail_etas{1.0, 4.0, 16.0, 64.0};
    moments->add_option("--spec", spec_path, "GMM spec JSON")->required()->check(CLI::ExistingFile);
    moments->add_option("--N", big_n, "Points per cloud");
    moments->add_option("--degree", ell, "Homology degree");
    moments->add_option("--p", p, "Moment order");
    moments->add_option("--epsilon", epsilon, "Tightness level");
    moments->add_flag("--verify", verify, "Run the Monte Carlo tail-bound check");
    moments->add_option("--etas", tail_etas, "Variance scaling factors (>= 1)")->delimiter(',');
    moments->add_option("--t-grid", t_values, "Thresholds t (default: multiples of U_eps)")->delimiter(',');
    moments->add_option("--trials", trials, "Trials per eta");
    moments->add_option("--seed", seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (diagram->parsed()) {
            const auto cloud = tc::read_cloud_csv(cloud_path, skip_header);
            const auto dm = tc::pairwise_distances(cloud);
            nlohmann::json all = nlohmann::json::array();
            for (int d : diagram_degrees) {
                const std::string text = tc::diagram_to_json(tc::vr_diagram(dm, d, cutoff));
                if (!out_dir.empty()) {
                    std::filesystem::create_directories(out_dir);
                    tc::write_text_file((std::filesystem::path(out_dir) / ("diagram_H" + std::to_string(d) + ".json")).string(),
                                        text + "\n");
                }
                all.push_back(nlohmann::json::parse(text));
            }
            if (out_dir.empty()) emit(all.size() == 1 ? all[0].dump(2) : all.dump(2), "");
        } else if (landscape->parsed()) {
            const auto dgm = tc::diagram_from_json(tc::read_text_file(diagram_path));
            double s = landscape_cutoff;
            if (s <= 0.0) {
                if (!std::isfinite(dgm.cutoff)) throw tc::InputError("diagram has no finite cutoff; pass --cutoff");
                s = dgm.cutoff;
            }
            emit(tc::landscape_csv(tc::landscape_layers(dgm, layers, s)), out);
        } else if (pljs->parsed()) {
            const auto a = tc::read_cloud_csv(pair_paths[0], skip_header);
            const auto b = tc::read_cloud_csv(pair_paths[1], skip_header);
            if (a.dim() != b.dim()) throw tc::InputError("clouds differ in dimension");
            const auto scaled = tc::rescale_windows({a, b}, percentile);
            tc::PLJSParams params;
            params.layers = layers;
            params.gamma = gamma;
            params.theta = theta;
            params.js_grid = js_grid;
            params.cutoff = scaled.cutoff;
            nlohmann::json stats = nlohmann::json::object();
            const auto da = tc::pairwise_distances(scaled.scaled_windows[0]);
            const auto db = tc::pairwise_distances(scaled.scaled_windows[1]);
            for (int d : degrees) {
                params.degree = d;
                stats["H" + std::to_string(d)] =
                    tc::pljs_statistic(tc::vr_diagram_capped(da, d, params.cutoff), tc::vr_diagram_capped(db, d, params.cutoff), params);
            }
            nlohmann::json doc{{"q", scaled.q}, {"cutoff", scaled.cutoff}, {"layers", layers}, {"gamma", gamma},
                               {"theta", theta}, {"js_grid", js_grid}, {"statistics", stats}};
            emit(doc.dump(2), "");
        } else if (test->parsed()) {
            tc::PipelineOptions options;
            if (!config_path.empty()) options = tc::options_from_json(tc::read_text_file(config_path));
            auto& c = options.config;
            if (t_degrees->count()) c.degrees = degrees;
            if (t_layers->count()) c.pljs.layers = layers;
            if (t_gamma->count()) c.pljs.gamma = gamma;
            if (t_theta->count()) c.pljs.theta = theta;
            if (t_shuffles->count()) c.n_shuffles = shuffles;
            if (t_alpha->count()) c.alpha = alpha;
            if (t_seed->count()) c.seed = seed;
            if (t_percentile->count()) options.percentile = percentile;
            if (t_grid->count()) c.pljs.js_grid = js_grid;
            options.out_dir = out_dir;
            const auto dataset = tc::parse_windows(window_paths, skip_header);
            const auto result = tc::run_pipeline(dataset, options);
            emit(result.csv, "");
        } else if (gmm_sim->parsed()) {
            const auto spec = tc::read_gmm_spec(spec_path);
            const auto experiment = tc::scaling_experiment(spec, etas, n_points, sim_degrees, reps, seed);
            emit(tc::scaling_csv(experiment), out);
        } else if (moments->parsed()) {
            const auto spec = tc::read_gmm_spec(spec_path);
            const auto constants = tc::gmm_constants(spec, big_n, ell, p, epsilon);
            nlohmann::json doc{{"constants", nlohmann::json::parse(tc::to_json(constants))},
                               {"config", {{"N", big_n}, {"ell", ell}, {"p", p}, {"epsilon", epsilon}}}};
            if (verify) {
                if (t_values.empty()) {
                    for (double f : {0.01, 0.1, 0.5, 1.0}) t_values.push_back(f * constants.u_epsilon);
                }
                const auto report = tc::verify_tail_bound(spec, big_n, ell, p, tail_etas, t_values, trials, seed);
                doc["tail"] = nlohmann::json::parse(tc::to_json(report));
            }
            emit(doc.dump(2), "");
        }
    } catch (const tc::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
