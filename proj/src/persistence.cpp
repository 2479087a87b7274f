#include "topochange/persistence.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <unordered_map>

#include "topochange/errors.hpp"

namespace topochange {

namespace {

using Column = std::vector<std::size_t>;

// GF(2) addition of two sorted index lists.
void add_into(Column& target, const Column& other) {
    Column out;
    out.reserve(target.size() + other.size());
    std::set_symmetric_difference(target.begin(), target.end(), other.begin(), other.end(),
                                  std::back_inserter(out));
    target.swap(out);
}

void sort_bars(std::vector<Bar>& bars) {
    std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned> rank_;
};

// Rank over GF(2) of a set of vectors given as sorted index lists over `width` coordinates.
std::size_t gf2_rank(const std::vector<Column>& vectors, std::size_t width) {
    const std::size_t words = (width + 63) / 64;
    std::vector<std::vector<std::uint64_t>> basis;  // basis[p] has highest bit p, or empty
    basis.resize(width);
    std::size_t rank = 0;
    for (const auto& v : vectors) {
        std::vector<std::uint64_t> bits(words, 0);
        for (std::size_t i : v) bits[i / 64] ^= std::uint64_t{1} << (i % 64);
        for (std::size_t w = words; w-- > 0;) {
            while (bits[w] != 0) {
                const std::size_t top = w * 64 + (63 - static_cast<std::size_t>(__builtin_clzll(bits[w])));
                if (basis[top].empty()) {
                    basis[top] = bits;
                    ++rank;
                    goto next_vector;
                }
                for (std::size_t k = 0; k <= w; ++k) bits[k] ^= basis[top][k];
            }
        }
    next_vector:;
    }
    return rank;
}

}  // namespace

std::size_t PersistenceDiagram::finite_count() const {
    return static_cast<std::size_t>(
        std::count_if(bars.begin(), bars.end(), [](const Bar& b) { return b.finite(); }));
}

std::size_t PersistenceDiagram::infinite_count() const { return bars.size() - finite_count(); }

PersistenceDiagram compute_diagram(const FiltrationComplex& complex, int degree) {
    if (degree < 0) {
        throw InputError("homology degree must be nonnegative");
    }
    if (complex.max_dim() < degree + 1) {
        throw ContractError("compute_diagram needs max_dim >= degree + 1");
    }
    const auto& simplices = complex.simplices();
    const std::size_t n = simplices.size();

    std::vector<std::ptrdiff_t> pivot_owner(n, -1);  // row -> reduced column with that pivot
    std::unordered_map<std::size_t, Column> reduced;  // cached nonzero reduced columns
    std::vector<char> positive(n, 0);
    std::vector<char> killed(n, 0);

    PersistenceDiagram dgm;
    dgm.degree = degree;
    dgm.cutoff = complex.cutoff();

    for (std::size_t j = 0; j < n; ++j) {
        const int dim = simplices[j].dim();
        if (dim != degree && dim != degree + 1) continue;
        Column col = complex.boundary(j);
        while (!col.empty()) {
            const std::ptrdiff_t owner = pivot_owner[col.back()];
            if (owner < 0) break;
            add_into(col, reduced.at(static_cast<std::size_t>(owner)));
        }
        if (col.empty()) {
            positive[j] = 1;
            continue;
        }
        const std::size_t pivot = col.back();
        pivot_owner[pivot] = static_cast<std::ptrdiff_t>(j);
        if (dim == degree + 1) {
            killed[pivot] = 1;
            const double birth = simplices[pivot].value;
            const double death = simplices[j].value;
            if (birth < death) dgm.bars.push_back({birth, death});
        }
        reduced.emplace(j, std::move(col));
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (simplices[i].dim() == degree && positive[i] && !killed[i]) {
            dgm.bars.push_back({simplices[i].value, kInfinity});
        }
    }
    sort_bars(dgm.bars);
    return dgm;
}

PersistenceDiagram h0_diagram(const DistanceMatrix& distances, double cutoff) {
    const std::size_t n = distances.size();
    struct Edge {
        double value;
        std::size_t i, j;
    };
    std::vector<Edge> edges;
    if (n > 1) edges.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distances(i, j);
            if (d <= cutoff) edges.push_back({d, i, j});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    PersistenceDiagram dgm;
    dgm.degree = 0;
    dgm.cutoff = cutoff;
    UnionFind uf(n);
    std::size_t components = n;
    for (const auto& e : edges) {
        if (uf.unite(e.i, e.j)) {
            --components;
            if (e.value > 0.0) dgm.bars.push_back({0.0, e.value});
            if (components == 1) break;
        }
    }
    for (std::size_t c = 0; c < components; ++c) dgm.bars.push_back({0.0, kInfinity});
    sort_bars(dgm.bars);
    return dgm;
}

PersistenceDiagram vr_diagram(const DistanceMatrix& distances, int degree, double cutoff) {
    if (degree == 0) return h0_diagram(distances, cutoff);
    return compute_diagram(build_vr(distances, degree + 1, cutoff), degree);
}

PersistenceDiagram vr_diagram_capped(const DistanceMatrix& distances, int degree, double cap) {
    if (!(cap > 0.0) || !std::isfinite(cap)) {
        throw InputError("cap must be positive and finite");
    }
    // Degree 0 keeps its one essential class; for degree >= 1 the full filtration has none,
    // so every class still alive at the cap dies after it.
    PersistenceDiagram dgm = degree == 0 ? h0_diagram(distances) : vr_diagram(distances, degree, cap);
    std::vector<Bar> bars;
    bars.reserve(dgm.bars.size());
    for (const auto& bar : dgm.bars) {
        const bool essential = degree == 0 && !bar.finite();
        const double death = essential ? bar.death : std::min(bar.death, cap);
        if (bar.birth < death) bars.push_back({bar.birth, death});
    }
    sort_bars(bars);
    dgm.bars = std::move(bars);
    dgm.cutoff = cap;
    return dgm;
}

std::size_t betti_at(const FiltrationComplex& complex, double r, int degree) {
    if (degree < 0) {
        throw InputError("homology degree must be nonnegative");
    }
    if (complex.max_dim() < degree + 1) {
        throw ContractError("betti_at needs max_dim >= degree + 1");
    }
    const auto& simplices = complex.simplices();
    // Dense per-dimension coordinates for simplices present at scale r.
    std::vector<std::ptrdiff_t> local(simplices.size(), -1);
    std::vector<std::size_t> next(static_cast<std::size_t>(degree) + 2, 0);
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        const int dim = simplices[i].dim();
        if (simplices[i].value > r || dim > degree + 1) continue;
        local[i] = static_cast<std::ptrdiff_t>(next[static_cast<std::size_t>(dim)]++);
    }

    auto boundary_vectors = [&](int dim) {
        std::vector<Column> vecs;
        for (std::size_t i = 0; i < simplices.size(); ++i) {
            if (simplices[i].dim() != dim || simplices[i].value > r) continue;
            Column v;
            for (std::size_t f : complex.boundary(i)) v.push_back(static_cast<std::size_t>(local[f]));
            std::sort(v.begin(), v.end());
            vecs.push_back(std::move(v));
        }
        return vecs;
    };

    const std::size_t n_ell = next[static_cast<std::size_t>(degree)];
    const std::size_t rank_down =
        degree == 0 ? 0 : gf2_rank(boundary_vectors(degree), next[static_cast<std::size_t>(degree - 1)]);
    const std::size_t rank_up = gf2_rank(boundary_vectors(degree + 1), n_ell);
    return n_ell - rank_down - rank_up;
}

}  // namespace topochange
