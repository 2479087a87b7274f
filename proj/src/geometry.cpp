#include "topochange/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "topochange/errors.hpp"

namespace topochange {

namespace {

void check_finite(const std::vector<double>& coords) {
    for (double c : coords) {
        if (!std::isfinite(c)) {
            throw InputError("point cloud contains a non-finite coordinate");
        }
    }
}

}  // namespace

PointCloud::PointCloud(const std::vector<std::vector<double>>& points) : dim_(0) {
    if (points.empty()) {
        throw InputError("point cloud must contain at least one point");
    }
    dim_ = points.front().size();
    if (dim_ == 0) {
        throw InputError("points must have at least one coordinate");
    }
    coords_.reserve(points.size() * dim_);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim_) {
            throw InputError("dimension mismatch: point " + std::to_string(i) + " has " +
                             std::to_string(points[i].size()) + " coordinates, expected " +
                             std::to_string(dim_));
        }
        coords_.insert(coords_.end(), points[i].begin(), points[i].end());
    }
    check_finite(coords_);
}

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) {
        throw InputError("points must have at least one coordinate");
    }
    if (coords_.empty()) {
        throw InputError("point cloud must contain at least one point");
    }
    if (coords_.size() % dim_ != 0) {
        throw InputError("dimension mismatch: coordinate count is not a multiple of the dimension");
    }
    check_finite(coords_);
}

PointCloud PointCloud::subset(std::span<const std::size_t> indices) const {
    std::vector<double> out;
    out.reserve(indices.size() * dim_);
    for (std::size_t i : indices) {
        auto p = point(i);
        out.insert(out.end(), p.begin(), p.end());
    }
    return PointCloud(dim_, std::move(out));
}

PointCloud PointCloud::concat(const PointCloud& a, const PointCloud& b) {
    if (a.dim() != b.dim()) {
        throw InputError("dimension mismatch between concatenated clouds");
    }
    std::vector<double> out(a.coords_);
    out.insert(out.end(), b.coords_.begin(), b.coords_.end());
    return PointCloud(a.dim(), std::move(out));
}

DistanceMatrix DistanceMatrix::subset(std::span<const std::size_t> indices) const {
    DistanceMatrix out(indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a) {
        for (std::size_t b = a + 1; b < indices.size(); ++b) {
            out.set(a, b, (*this)(indices[a], indices[b]));
        }
    }
    return out;
}

double DistanceMatrix::max_entry() const {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, v);
    return m;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw InputError("dimension mismatch in distance computation");
    }
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
    }
    return std::sqrt(s);
}

DistanceMatrix pairwise_distances(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    DistanceMatrix dm(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            dm.set(i, j, euclidean_distance(cloud.point(i), cloud.point(j)));
        }
    }
    return dm;
}

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
    if (a.dim() != b.dim()) {
        throw InputError("dimension mismatch in hausdorff_distance");
    }
    auto directed = [](const PointCloud& from, const PointCloud& to) {
        double worst = 0.0;
        for (std::size_t i = 0; i < from.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < to.size(); ++j) {
                best = std::min(best, euclidean_distance(from.point(i), to.point(j)));
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

double percentile(std::vector<double> values, double pct) {
    if (values.empty()) {
        throw InputError("percentile of an empty sample");
    }
    if (!(pct >= 0.0 && pct <= 100.0)) {
        throw InputError("percentile must lie in [0, 100]");
    }
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * pct / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

RescaleResult rescale_windows(const std::vector<PointCloud>& windows, double pct) {
    if (windows.empty()) {
        throw InputError("rescale_windows needs at least one window");
    }
    if (!(pct > 0.0 && pct <= 100.0)) {
        throw InputError("rescaling percentile must lie in (0, 100]");
    }
    const std::size_t dim = windows.front().dim();
    std::vector<double> pooled;
    for (const auto& w : windows) {
        if (w.dim() != dim) {
            throw InputError("dimension mismatch between windows");
        }
        const auto dm = pairwise_distances(w);
        for (std::size_t i = 0; i < dm.size(); ++i) {
            for (std::size_t j = i + 1; j < dm.size(); ++j) pooled.push_back(dm(i, j));
        }
    }
    if (pooled.empty()) {
        throw InputError("rescale_windows needs a window with at least two points");
    }
    const double q = percentile(std::move(pooled), pct);
    if (!(q > 0.0)) {
        throw DegenerateDataError("rescaling distance q is zero: all points coincide");
    }

    RescaleResult result{{}, q, 1.0};
    result.scaled_windows.reserve(windows.size());
    for (const auto& w : windows) {
        std::vector<double> scaled(w.coords().begin(), w.coords().end());
        for (double& c : scaled) c /= q;
        result.scaled_windows.emplace_back(dim, std::move(scaled));
    }
    return result;
}

}  // namespace topochange
