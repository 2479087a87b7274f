#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace topochange {

/// An ordered, nonempty list of finite d-dimensional points stored row-major.
class PointCloud {
public:
    /// Throws InputError on empty input, ragged rows or non-finite coordinates.
    explicit PointCloud(const std::vector<std::vector<double>>& points);
    PointCloud(std::initializer_list<std::initializer_list<double>> rows)
        : PointCloud(std::vector<std::vector<double>>(rows.begin(), rows.end())) {}
    PointCloud(std::size_t dim, std::vector<double> coords);

    std::size_t size() const noexcept { return coords_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    std::span<const double> coords() const noexcept { return coords_; }

    /// Sub-cloud made of the listed point indices, in the listed order.
    PointCloud subset(std::span<const std::size_t> indices) const;

    /// Concatenation of two clouds of equal dimension.
    static PointCloud concat(const PointCloud& a, const PointCloud& b);

    friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
    std::size_t dim_;
    std::vector<double> coords_;
};

/// Symmetric N x N matrix of Euclidean distances with zero diagonal.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        entries_[i * n_ + j] = v;
        entries_[j * n_ + i] = v;
    }

    /// Restriction to a subset of indices (order preserved).
    DistanceMatrix subset(std::span<const std::size_t> indices) const;

    /// Largest entry, 0 for fewer than two points.
    double max_entry() const;

private:
    std::size_t n_;
    std::vector<double> entries_;
};

struct RescaleResult {
    std::vector<PointCloud> scaled_windows;
    double q;
    double cutoff;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

DistanceMatrix pairwise_distances(const PointCloud& cloud);

/// max of the two directed max-min distances between the point sets.
double hausdorff_distance(const PointCloud& a, const PointCloud& b);

/// Empirical percentile with linear interpolation between order statistics.
/// `pct` in [0, 100]; `values` must be nonempty.
double percentile(std::vector<double> values, double pct);

/// Divides every window by q, the `pct`-th percentile of the pooled within-window
/// pairwise distances, so the common cutoff becomes S = 1.
RescaleResult rescale_windows(const std::vector<PointCloud>& windows, double pct = 95.0);

}  // namespace topochange
