#include "topochange/pipeline.hpp"

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "topochange/diagram_metrics.hpp"
#include "topochange/errors.hpp"

namespace topochange {

namespace {

// Rethrows the active exception with `context` prefixed, preserving its category.
[[noreturn]] void rethrow_with(const std::string& context) {
    try {
        throw;
    } catch (const ParseError&) {
        throw;
    } catch (const GuardError& e) {
        throw GuardError(context + ": " + e.what());
    } catch (const DegenerateDataError& e) {
        throw DegenerateDataError(context + ": " + e.what());
    } catch (const InputError& e) {
        throw InputError(context + ": " + e.what());
    } catch (const ContractError& e) {
        throw ContractError(context + ": " + e.what());
    }
}

nlohmann::json parameters_json(const PipelineOptions& o) {
    const auto& c = o.config;
    return {{"n_shuffles", c.n_shuffles}, {"alpha", c.alpha},         {"seed", c.seed},
            {"degrees", c.degrees},       {"layers", c.pljs.layers},  {"gamma", c.pljs.gamma},
            {"theta", c.pljs.theta},      {"js_grid", c.pljs.js_grid}, {"percentile", o.percentile}};
}

}  // namespace

PipelineOptions options_from_json(const std::string& text, PipelineOptions base) {
    try {
        auto doc = nlohmann::json::parse(text);
        if (doc.contains("parameters")) doc = doc.at("parameters");
        auto& c = base.config;
        if (doc.contains("n_shuffles")) c.n_shuffles = doc.at("n_shuffles").get<std::size_t>();
        if (doc.contains("alpha")) c.alpha = doc.at("alpha").get<double>();
        if (doc.contains("seed")) c.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("degrees")) c.degrees = doc.at("degrees").get<std::vector<int>>();
        if (doc.contains("layers")) c.pljs.layers = doc.at("layers").get<int>();
        if (doc.contains("gamma")) c.pljs.gamma = doc.at("gamma").get<double>();
        if (doc.contains("theta")) c.pljs.theta = doc.at("theta").get<double>();
        if (doc.contains("js_grid")) c.pljs.js_grid = doc.at("js_grid").get<std::size_t>();
        if (doc.contains("percentile")) base.percentile = doc.at("percentile").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed test config: ") + e.what());
    }
    base.config.validate();
    return base;
}

std::string options_to_json(const PipelineOptions& options) { return parameters_json(options).dump(2); }

PipelineResult run_pipeline(const WindowedDataset& dataset, const PipelineOptions& options) {
    options.config.validate();
    if (dataset.windows.size() != dataset.labels.size()) throw ContractError("labels and windows differ in count");
    if (dataset.windows.size() < 2) throw InputError("the pipeline needs at least two windows");

    PipelineResult result{rescale_windows(dataset.windows, options.percentile), {}, {}, {}};
    TestConfig config = options.config;
    config.pljs.cutoff = result.rescale.cutoff;
    const auto& scaled = result.rescale.scaled_windows;

    nlohmann::json windows = nlohmann::json::array();
    for (std::size_t w = 0; w < scaled.size(); ++w) {
        nlohmann::json diagrams = nlohmann::json::object();
        try {
            const DistanceMatrix dm = pairwise_distances(scaled[w]);
            for (int degree : config.degrees) {
                const auto dgm = vr_diagram_capped(dm, degree, config.pljs.cutoff);
                const auto stats = persistence_stats(dgm);
                diagrams["H" + std::to_string(degree)] = {{"finite_bars", dgm.finite_count()},
                                                          {"infinite_bars", dgm.infinite_count()},
                                                          {"total_persistence", stats.total},
                                                          {"max_persistence", stats.max}};
            }
        } catch (...) {
            rethrow_with("window '" + dataset.labels[w] + "'");
        }
        windows.push_back({{"label", dataset.labels[w]}, {"n", scaled[w].size()}, {"diagrams", diagrams}});
    }

    try {
        result.report = adjacent_windows_test(scaled, config);
    } catch (...) {
        rethrow_with("adjacent window test");
    }
    const auto& report = result.report;

    nlohmann::json pairs = nlohmann::json::array();
    for (std::size_t pair = 0; pair + 1 < scaled.size(); ++pair) {
        nlohmann::json tests = nlohmann::json::array();
        for (const auto& family : report.families) {
            const auto& r = family.results[pair];
            tests.push_back({{"degree", family.degree},
                             {"observed", r.observed},
                             {"p_value", r.p_value},
                             {"exceedances", r.exceedances},
                             {"n_used", r.n_used},
                             {"seed", r.seed},
                             {"bonferroni_reject", static_cast<bool>(family.bonferroni[pair])},
                             {"holm_reject", static_cast<bool>(family.holm[pair])}});
        }
        pairs.push_back({{"window1", dataset.labels[pair]},
                         {"window2", dataset.labels[pair + 1]},
                         {"n1", scaled[pair].size()},
                         {"n2", scaled[pair + 1].size()},
                         {"tests", tests}});
    }

    nlohmann::json doc{{"parameters", parameters_json(options)},
                       {"rescale", {{"q", result.rescale.q}, {"cutoff", result.rescale.cutoff}}},
                       {"bonferroni_threshold", report.bonferroni_threshold},
                       {"mc_se_bound", report.se_bound},
                       {"p_value_grid_spacing", report.grid_spacing},
                       {"windows", windows},
                       {"pairs", pairs}};
    result.json = doc.dump(2);

    std::ostringstream csv;
    csv.precision(17);
    csv << "date1,date2";
    for (const auto& family : report.families) csv << ",stat_H" << family.degree << ",p_H" << family.degree;
    csv << ",n1,n2\n";
    for (std::size_t pair = 0; pair + 1 < scaled.size(); ++pair) {
        csv << dataset.labels[pair] << ',' << dataset.labels[pair + 1];
        for (const auto& family : report.families) {
            csv << ',' << family.results[pair].observed << ',' << family.results[pair].p_value;
        }
        csv << ',' << scaled[pair].size() << ',' << scaled[pair + 1].size() << '\n';
    }
    result.csv = csv.str();

    if (!options.out_dir.empty()) {
        std::filesystem::create_directories(options.out_dir);
        const std::filesystem::path dir(options.out_dir);
        write_text_file((dir / "report.json").string(), result.json);
        write_text_file((dir / "report.csv").string(), result.csv);
    }
    return result;
}

}  // namespace topochange
