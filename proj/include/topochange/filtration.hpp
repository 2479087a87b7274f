#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "topochange/geometry.hpp"

namespace topochange {

using Vertex = std::uint32_t;

struct FilteredSimplex {
    std::vector<Vertex> vertices;  // strictly increasing
    double value = 0.0;

    int dim() const noexcept { return static_cast<int>(vertices.size()) - 1; }
};

/// Vietoris-Rips complex up to `max_dim`, truncated at `cutoff`, in reduction order:
/// (value, dim, lexicographic vertices) ascending.
class FiltrationComplex {
public:
    FiltrationComplex(std::vector<FilteredSimplex> simplices, std::size_t n_vertices, int max_dim,
                      double cutoff);

    const std::vector<FilteredSimplex>& simplices() const noexcept { return simplices_; }
    std::size_t n_vertices() const noexcept { return n_vertices_; }
    int max_dim() const noexcept { return max_dim_; }
    double cutoff() const noexcept { return cutoff_; }
    std::size_t size() const noexcept { return simplices_.size(); }

    /// Position of the simplex with these vertices in the sorted order, or -1.
    std::ptrdiff_t index_of(const std::vector<Vertex>& vertices) const;

    /// Positions of the codimension-one faces of simplex `i`, ascending.
    std::vector<std::size_t> boundary(std::size_t i) const;

private:
    std::uint64_t key(const std::vector<Vertex>& vertices) const;

    std::vector<FilteredSimplex> simplices_;
    std::size_t n_vertices_;
    int max_dim_;
    double cutoff_;
    std::vector<std::vector<std::uint64_t>> binomial_;
    std::vector<std::vector<std::pair<std::uint64_t, std::size_t>>> lookup_;  // per dim, sorted by key
};

/// All simplices of dimension <= max_dim with diameter <= cutoff (cutoff may be +inf).
FiltrationComplex build_vr(const DistanceMatrix& distances, int max_dim,
                           double cutoff = std::numeric_limits<double>::infinity());
FiltrationComplex build_vr(const PointCloud& cloud, int max_dim,
                           double cutoff = std::numeric_limits<double>::infinity());

}  // namespace topochange
