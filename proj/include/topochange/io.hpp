#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "topochange/geometry.hpp"
#include "topochange/landscape.hpp"
#include "topochange/persistence.hpp"

namespace topochange {

/// Ordered windows with unique labels and a shared dimension.
struct WindowedDataset {
    std::vector<std::string> labels;
    std::vector<PointCloud> windows;
    std::size_t dim = 0;
};

/// One CSV row per point. ParseError (file and line) on ragged rows, non-numeric cells or
/// a file without data rows. With `skip_header` the first line is ignored.
PointCloud read_cloud_csv(const std::string& path, bool skip_header = false);

/// Writes one row per point with 17 significant digits so that reading back is exact.
void write_cloud_csv(const PointCloud& cloud, const std::string& path);

/// One window per file, labelled by the file stem.
WindowedDataset parse_windows(const std::vector<std::string>& paths, bool skip_header = false);

/// {"degree": l, "cutoff": S, "bars": [[b, d or null], ...]}; an infinite cutoff is written as null.
std::string diagram_to_json(const PersistenceDiagram& dgm);
PersistenceDiagram diagram_from_json(const std::string& text);

/// Columns t, lambda_1..lambda_M, sum over the common breakpoints.
std::string landscape_csv(const std::vector<PiecewiseLinear>& layers);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace topochange
