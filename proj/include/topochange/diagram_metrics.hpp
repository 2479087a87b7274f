#pragma once

#include "topochange/persistence.hpp"

namespace topochange {

struct PersistenceStats {
    double total = 0.0;
    double max = 0.0;
};

/// Sum of finite bar lengths, with multiplicity.
double total_persistence(const PersistenceDiagram& dgm);

/// Longest finite bar; 0 when the diagram has no finite bars.
double max_persistence(const PersistenceDiagram& dgm);

PersistenceStats persistence_stats(const PersistenceDiagram& dgm);

/// Sup-norm distance between two bars, and from a bar to the diagonal.
double bar_distance(const Bar& a, const Bar& b);
double diagonal_distance(const Bar& a);

/// Exact bottleneck distance. Essential bars must match one-to-one by birth; if the
/// diagrams have different numbers of them the distance is +inf.
/// Throws InputError when the degrees differ.
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b);

}  // namespace topochange
