#include "topochange/filtration.hpp"

#include <algorithm>
#include <cmath>

#include "topochange/errors.hpp"

namespace topochange {

namespace {

bool reduction_order(const FilteredSimplex& a, const FilteredSimplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

}  // namespace

FiltrationComplex::FiltrationComplex(std::vector<FilteredSimplex> simplices, std::size_t n_vertices,
                                     int max_dim, double cutoff)
    : simplices_(std::move(simplices)), n_vertices_(n_vertices), max_dim_(max_dim), cutoff_(cutoff) {
    std::sort(simplices_.begin(), simplices_.end(), reduction_order);

    // Pascal table for the combinatorial number system keys.
    const std::size_t kmax = static_cast<std::size_t>(max_dim_) + 2;
    binomial_.assign(n_vertices_ + 1, std::vector<std::uint64_t>(kmax + 1, 0));
    for (std::size_t n = 0; n <= n_vertices_; ++n) {
        binomial_[n][0] = 1;
        for (std::size_t k = 1; k <= std::min(n, kmax); ++k) {
            binomial_[n][k] = binomial_[n - 1][k - 1] + (k <= n - 1 ? binomial_[n - 1][k] : 0);
        }
    }

    lookup_.assign(static_cast<std::size_t>(max_dim_) + 1, {});
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
        const auto& s = simplices_[i];
        if (s.dim() > max_dim_) {
            throw ContractError("simplex dimension exceeds complex max_dim");
        }
        lookup_[static_cast<std::size_t>(s.dim())].emplace_back(key(s.vertices), i);
    }
    for (auto& table : lookup_) std::sort(table.begin(), table.end());
}

std::uint64_t FiltrationComplex::key(const std::vector<Vertex>& vertices) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) k += binomial_[vertices[i]][i + 1];
    return k;
}

std::ptrdiff_t FiltrationComplex::index_of(const std::vector<Vertex>& vertices) const {
    if (vertices.empty() || vertices.size() > lookup_.size()) return -1;
    for (Vertex v : vertices) {
        if (v >= n_vertices_) return -1;
    }
    const auto& table = lookup_[vertices.size() - 1];
    const std::uint64_t k = key(vertices);
    auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(k, std::size_t{0}));
    if (it == table.end() || it->first != k) return -1;
    return static_cast<std::ptrdiff_t>(it->second);
}

std::vector<std::size_t> FiltrationComplex::boundary(std::size_t i) const {
    const auto& s = simplices_[i];
    std::vector<std::size_t> faces;
    if (s.vertices.size() < 2) return faces;
    faces.reserve(s.vertices.size());
    std::vector<Vertex> face(s.vertices.size() - 1);
    for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
        std::size_t w = 0;
        for (std::size_t j = 0; j < s.vertices.size(); ++j) {
            if (j != skip) face[w++] = s.vertices[j];
        }
        const auto idx = index_of(face);
        if (idx < 0) {
            throw ContractError("filtration is not closed under faces");
        }
        faces.push_back(static_cast<std::size_t>(idx));
    }
    std::sort(faces.begin(), faces.end());
    return faces;
}

FiltrationComplex build_vr(const DistanceMatrix& distances, int max_dim, double cutoff) {
    if (max_dim < 0) {
        throw InputError("max_dim must be nonnegative");
    }
    if (!(cutoff > 0.0)) {
        throw InputError("cutoff must be positive");
    }
    const std::size_t n = distances.size();
    std::vector<FilteredSimplex> all;
    all.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        all.push_back({{static_cast<Vertex>(v)}, 0.0});
    }

    // Extend each (k-1)-simplex by larger vertices adjacent to all of its vertices.
    std::size_t layer_begin = 0;
    std::size_t layer_end = all.size();
    for (int k = 1; k <= max_dim; ++k) {
        for (std::size_t s = layer_begin; s < layer_end; ++s) {
            const Vertex last = all[s].vertices.back();
            for (std::size_t v = last + 1; v < n; ++v) {
                double diam = all[s].value;
                bool ok = true;
                for (Vertex u : all[s].vertices) {
                    const double duv = distances(u, v);
                    if (duv > cutoff) {
                        ok = false;
                        break;
                    }
                    diam = std::max(diam, duv);
                }
                if (!ok) continue;
                FilteredSimplex next{all[s].vertices, diam};
                next.vertices.push_back(static_cast<Vertex>(v));
                all.push_back(std::move(next));
            }
        }
        layer_begin = layer_end;
        layer_end = all.size();
        if (layer_begin == layer_end) break;
    }
    return FiltrationComplex(std::move(all), n, max_dim, cutoff);
}

FiltrationComplex build_vr(const PointCloud& cloud, int max_dim, double cutoff) {
    return build_vr(pairwise_distances(cloud), max_dim, cutoff);
}

}  // namespace topochange
