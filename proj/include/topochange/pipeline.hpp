#pragma once

#include <string>

#include "topochange/geometry.hpp"
#include "topochange/io.hpp"
#include "topochange/permutation.hpp"

namespace topochange {

struct PipelineOptions {
    TestConfig config;
    double percentile = 95.0;
    std::string out_dir;  // empty: no files written
};

struct PipelineResult {
    RescaleResult rescale;
    MultiTestReport report;
    std::string json;
    std::string csv;
};

/// Rescale windows to a common cutoff, compute per-window diagrams, test every adjacent
/// pair, and render the JSON and CSV reports (written to out_dir as report.json / report.csv).
PipelineResult run_pipeline(const WindowedDataset& dataset, const PipelineOptions& options);

/// Reads a TestConfig (and percentile) from a JSON object. A previous report is accepted
/// as well: its "parameters" member is used. Missing keys keep the values in `base`.
PipelineOptions options_from_json(const std::string& text, PipelineOptions base = {});

std::string options_to_json(const PipelineOptions& options);

}  // namespace topochange
