#include "topochange/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "topochange/errors.hpp"

namespace topochange {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_cell(std::string_view cell, const std::string& path, std::size_t line) {
    cell = trim(cell);
    if (cell.empty()) throw ParseError(path, line, "empty cell");
    // from_chars rejects a leading '+', which some writers emit.
    if (cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw ParseError(path, line, "non-numeric cell '" + std::string(cell) + "'");
    }
    if (!std::isfinite(value)) throw ParseError(path, line, "non-finite value");
    return value;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

PointCloud read_cloud_csv(const std::string& path, bool skip_header) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::string line;
    std::size_t line_no = 0;
    std::size_t dim = 0;
    std::vector<double> coords;
    while (std::getline(in, line)) {
        ++line_no;
        if (skip_header && line_no == 1) continue;
        const auto body = trim(line);
        if (body.empty()) continue;
        std::size_t cols = 0;
        std::size_t start = 0;
        while (true) {
            const auto comma = body.find(',', start);
            const auto cell = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
            coords.push_back(parse_cell(cell, path, line_no));
            ++cols;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (dim == 0) {
            dim = cols;
        } else if (cols != dim) {
            throw ParseError(path, line_no,
                             "ragged row: expected " + std::to_string(dim) + " columns, found " + std::to_string(cols));
        }
    }
    if (dim == 0) throw ParseError(path, std::max<std::size_t>(line_no, 1), "file contains no data rows");
    return PointCloud(dim, std::move(coords));
}

void write_cloud_csv(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (j) out << ',';
            out << format_double(p[j]);
        }
        out << '\n';
    }
}

WindowedDataset parse_windows(const std::vector<std::string>& paths, bool skip_header) {
    if (paths.empty()) throw InputError("no window files given");
    WindowedDataset ds;
    std::set<std::string> seen;
    for (const auto& path : paths) {
        auto cloud = read_cloud_csv(path, skip_header);
        const std::string label = std::filesystem::path(path).stem().string();
        if (!seen.insert(label).second) throw InputError("duplicate window label '" + label + "'");
        if (ds.windows.empty()) {
            ds.dim = cloud.dim();
        } else if (cloud.dim() != ds.dim) {
            throw InputError("dimension mismatch: " + path + " has " + std::to_string(cloud.dim()) +
                             " columns, expected " + std::to_string(ds.dim));
        }
        ds.labels.push_back(label);
        ds.windows.push_back(std::move(cloud));
    }
    return ds;
}

std::string diagram_to_json(const PersistenceDiagram& dgm) {
    nlohmann::json bars = nlohmann::json::array();
    for (const auto& bar : dgm.bars) {
        bars.push_back({bar.birth, bar.finite() ? nlohmann::json(bar.death) : nlohmann::json(nullptr)});
    }
    nlohmann::json doc{{"degree", dgm.degree},
                       {"cutoff", std::isfinite(dgm.cutoff) ? nlohmann::json(dgm.cutoff) : nlohmann::json(nullptr)},
                       {"bars", bars}};
    return doc.dump(2);
}

PersistenceDiagram diagram_from_json(const std::string& text) {
    PersistenceDiagram dgm;
    try {
        const auto doc = nlohmann::json::parse(text);
        dgm.degree = doc.at("degree").get<int>();
        const auto& cutoff = doc.at("cutoff");
        dgm.cutoff = cutoff.is_null() ? kInfinity : cutoff.get<double>();
        for (const auto& bar : doc.at("bars")) {
            if (!bar.is_array() || bar.size() != 2) throw InputError("each bar must be a [birth, death] pair");
            const double b = bar[0].get<double>();
            const double d = bar[1].is_null() ? kInfinity : bar[1].get<double>();
            if (!std::isfinite(b) || d < b) throw InputError("bar must satisfy birth <= death");
            dgm.bars.push_back({b, d});
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed diagram JSON: ") + e.what());
    }
    if (dgm.degree < 0) throw InputError("diagram degree must be nonnegative");
    return dgm;
}

std::string landscape_csv(const std::vector<PiecewiseLinear>& layers) {
    if (layers.empty()) throw InputError("no landscape layers");
    std::ostringstream out;
    out << 't';
    for (std::size_t m = 0; m < layers.size(); ++m) out << ",lambda_" << (m + 1);
    out << ",sum\n";
    const auto& ts = layers.front().breakpoints();
    for (std::size_t k = 0; k < ts.size(); ++k) {
        out << format_double(ts[k]);
        double sum = 0.0;
        for (const auto& layer : layers) {
            out << ',' << format_double(layer.values()[k]);
            sum += layer.values()[k];
        }
        out << ',' << format_double(sum) << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

}  // namespace topochange
