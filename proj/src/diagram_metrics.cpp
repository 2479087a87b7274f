#include "topochange/diagram_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "topochange/errors.hpp"

namespace topochange {

double total_persistence(const PersistenceDiagram& dgm) {
    double total = 0.0;
    for (const auto& bar : dgm.bars) {
        if (bar.finite()) total += bar.persistence();
    }
    return total;
}

double max_persistence(const PersistenceDiagram& dgm) {
    double best = 0.0;
    for (const auto& bar : dgm.bars) {
        if (bar.finite()) best = std::max(best, bar.persistence());
    }
    return best;
}

PersistenceStats persistence_stats(const PersistenceDiagram& dgm) {
    return {total_persistence(dgm), max_persistence(dgm)};
}

double bar_distance(const Bar& a, const Bar& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_distance(const Bar& a) { return (a.death - a.birth) / 2.0; }

namespace {

// Perfect matching test on the bipartite graph whose left side is A plus one diagonal
// slot per point of B, and whose right side is B plus one diagonal slot per point of A.
class BottleneckMatcher {
public:
    BottleneckMatcher(const std::vector<Bar>& a, const std::vector<Bar>& b) : a_(a), b_(b) {}

    bool feasible(double delta) {
        const std::size_t n = a_.size();
        const std::size_t m = b_.size();
        const std::size_t size = n + m;
        adjacency_.assign(size, {});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (bar_distance(a_[i], b_[j]) <= delta) adjacency_[i].push_back(j);
            }
            if (diagonal_distance(a_[i]) <= delta) adjacency_[i].push_back(m + i);
        }
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t left = n + j;
            if (diagonal_distance(b_[j]) <= delta) adjacency_[left].push_back(j);
            for (std::size_t i = 0; i < n; ++i) adjacency_[left].push_back(m + i);
        }
        match_right_.assign(size, kUnmatched);
        for (std::size_t u = 0; u < size; ++u) {
            visited_.assign(size, 0);
            if (!augment(u)) return false;
        }
        return true;
    }

private:
    static constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

    bool augment(std::size_t u) {
        for (std::size_t v : adjacency_[u]) {
            if (visited_[v]) continue;
            visited_[v] = 1;
            if (match_right_[v] == kUnmatched || augment(match_right_[v])) {
                match_right_[v] = u;
                return true;
            }
        }
        return false;
    }

    const std::vector<Bar>& a_;
    const std::vector<Bar>& b_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::size_t> match_right_;
    std::vector<char> visited_;
};

}  // namespace

double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    if (a.degree != b.degree) {
        throw InputError("bottleneck_distance requires diagrams of the same degree");
    }
    std::vector<Bar> fa, fb;
    std::vector<double> ea, eb;
    for (const auto& bar : a.bars) {
        if (bar.finite()) fa.push_back(bar); else ea.push_back(bar.birth);
    }
    for (const auto& bar : b.bars) {
        if (bar.finite()) fb.push_back(bar); else eb.push_back(bar.birth);
    }
    if (ea.size() != eb.size()) return kInfinity;

    // Sorted order is an optimal bottleneck matching on the line.
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    double essential = 0.0;
    for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));

    if (fa.empty() && fb.empty()) return essential;

    std::vector<double> candidates;
    candidates.reserve(fa.size() * fb.size() + fa.size() + fb.size() + 1);
    candidates.push_back(0.0);
    for (const auto& x : fa) {
        candidates.push_back(diagonal_distance(x));
        for (const auto& y : fb) candidates.push_back(bar_distance(x, y));
    }
    for (const auto& y : fb) candidates.push_back(diagonal_distance(y));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    BottleneckMatcher matcher(fa, fb);
    // Matching every point to the diagonal is always possible at the largest candidate,
    // so the optimum is one of the enumerated costs.
    if (!matcher.feasible(candidates.back())) {
        throw ContractError("bottleneck candidate set does not contain a feasible cost");
    }
    std::size_t lo = 0;
    std::size_t hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (matcher.feasible(candidates[mid])) hi = mid; else lo = mid + 1;
    }
    return std::max(essential, candidates[lo]);
}

}  // namespace topochange
