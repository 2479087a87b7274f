#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include <json.hpp>

#include "topochange/errors.hpp"
#include "topochange/pipeline.hpp"

using namespace topochange;
namespace fs = std::filesystem;

namespace {

WindowedDataset dataset(std::size_t k, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    WindowedDataset ds;
    ds.dim = 2;
    for (std::size_t w = 0; w < k; ++w) {
        std::vector<double> c(n * 2);
        for (auto& v : c) v = z(rng);
        ds.windows.emplace_back(2, c);
        ds.labels.push_back("w" + std::to_string(w));
    }
    return ds;
}

}  // namespace

TEST(Pipeline, DegreeZeroOnlyHasNoH1Columns) {
    PipelineOptions o;
    o.config.n_shuffles = 19;
    o.config.degrees = {0};
    const auto r = run_pipeline(dataset(3, 10, 1), o);
    const auto header = r.csv.substr(0, r.csv.find('\n'));
    EXPECT_EQ(header, "date1,date2,stat_H0,p_H0,n1,n2");
    EXPECT_EQ(std::count(r.csv.begin(), r.csv.end(), '\n'), 3);
}

TEST(Pipeline, BothDegreesHeader) {
    PipelineOptions o;
    o.config.n_shuffles = 9;
    const auto r = run_pipeline(dataset(2, 8, 2), o);
    EXPECT_EQ(r.csv.substr(0, r.csv.find('\n')), "date1,date2,stat_H0,p_H0,stat_H1,p_H1,n1,n2");
}

TEST(Pipeline, EchoedConfigReproducesPValues) {
    PipelineOptions o;
    o.config.n_shuffles = 29;
    o.config.seed = 1234;
    o.config.degrees = {0, 1};
    o.config.pljs.layers = 2;
    o.percentile = 90;
    const auto ds = dataset(3, 9, 3);
    const auto first = run_pipeline(ds, o);
    const auto again = run_pipeline(ds, options_from_json(first.json));
    EXPECT_EQ(first.csv, again.csv);
    const auto doc = nlohmann::json::parse(first.json);
    EXPECT_EQ(doc["parameters"]["seed"].get<std::uint64_t>(), 1234u);
    EXPECT_EQ(doc["parameters"]["percentile"].get<double>(), 90.0);
    EXPECT_TRUE(doc["pairs"][0]["tests"][0].contains("seed"));
}

TEST(Pipeline, WritesReportFiles) {
    PipelineOptions o;
    o.config.n_shuffles = 5;
    o.config.degrees = {0};
    o.out_dir = (fs::temp_directory_path() / "topochange_pipeline_out").string();
    run_pipeline(dataset(2, 6, 4), o);
    EXPECT_TRUE(fs::exists(fs::path(o.out_dir) / "report.json"));
    EXPECT_TRUE(fs::exists(fs::path(o.out_dir) / "report.csv"));
    fs::remove_all(o.out_dir);
}

TEST(Pipeline, SingletonWindowAndInvalidConfig) {
    auto ds = dataset(2, 5, 5);
    ds.windows.push_back(PointCloud({{0.0, 0.0}}));
    ds.labels.push_back("lonely");
    PipelineOptions o;
    o.config.n_shuffles = 5;
    o.config.degrees = {0};
    EXPECT_NO_THROW(run_pipeline(ds, o));
    PipelineOptions bad;
    bad.config.alpha = 2.0;
    EXPECT_THROW(run_pipeline(ds, bad), InputError);
    EXPECT_THROW(options_from_json("{\"alpha\": \"x\"}"), InputError);
}
