#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "topochange/filtration.hpp"
#include "topochange/geometry.hpp"

namespace topochange {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Bar {
    double birth = 0.0;
    double death = kInfinity;

    bool finite() const noexcept { return std::isfinite(death); }
    double persistence() const noexcept { return death - birth; }

    friend bool operator==(const Bar&, const Bar&) = default;
};

/// Multiset of bars in a single homology degree; duplicates are meaningful.
struct PersistenceDiagram {
    int degree = 0;
    double cutoff = kInfinity;
    std::vector<Bar> bars;

    std::size_t finite_count() const;
    std::size_t infinite_count() const;
};

/// Bars of degree `degree` from GF(2) column reduction of the complex's boundary matrix.
/// Requires complex.max_dim() >= degree + 1 (ContractError otherwise).
PersistenceDiagram compute_diagram(const FiltrationComplex& complex, int degree);

/// Degree-0 diagram via a union-find sweep over edges <= cutoff.
PersistenceDiagram h0_diagram(const DistanceMatrix& distances, double cutoff = kInfinity);

/// Degree `degree` diagram of the Vietoris-Rips filtration of `distances`, using the
/// union-find path for degree 0 and matrix reduction otherwise.
PersistenceDiagram vr_diagram(const DistanceMatrix& distances, int degree, double cutoff = kInfinity);

/// The diagram of the untruncated Vietoris-Rips filtration with every finite death above
/// `cap` lowered to `cap`, computed from the filtration truncated at `cap`.
/// In degree 0 the single essential bar stays infinite.
PersistenceDiagram vr_diagram_capped(const DistanceMatrix& distances, int degree, double cap);

/// Rank of H_degree(K_r) over GF(2) by dense elimination of boundary matrices.
/// Test oracle; cost is cubic in the number of simplices.
std::size_t betti_at(const FiltrationComplex& complex, double r, int degree);

}  // namespace topochange
