#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "topochange/diagram_metrics.hpp"
#include "topochange/errors.hpp"
#include "topochange/moments.hpp"
#include "topochange/persistence.hpp"

using namespace topochange;

namespace {

PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t d) {
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> coords(n * d);
    for (auto& v : coords) v = u(rng);
    return PointCloud(d, coords);
}

std::size_t alive(const PersistenceDiagram& dgm, double r) {
    return static_cast<std::size_t>(std::count_if(dgm.bars.begin(), dgm.bars.end(),
                                                  [r](const Bar& b) { return b.birth <= r && r < b.death; }));
}

}  // namespace

TEST(Persistence, ThreePoints) {
    const PointCloud c({{0, 0}, {3, 0}, {0, 4}});
    const auto k = build_vr(c, 2);
    const auto h0 = compute_diagram(k, 0);
    ASSERT_EQ(h0.bars.size(), 3u);
    EXPECT_EQ(h0.bars[0], (Bar{0, 3}));
    EXPECT_EQ(h0.bars[1], (Bar{0, 4}));
    EXPECT_EQ(h0.bars[2], (Bar{0, kInfinity}));
    EXPECT_TRUE(compute_diagram(k, 1).bars.empty());
    EXPECT_EQ(betti_at(k, 2.9, 0), 3u);
    EXPECT_EQ(betti_at(k, 4.0, 0), 1u);
}

TEST(Persistence, UnitSquareLoop) {
    const PointCloud c({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto k = build_vr(c, 2, 2.0);
    const auto h1 = compute_diagram(k, 1);
    ASSERT_EQ(h1.bars.size(), 1u);
    EXPECT_EQ(h1.bars[0].birth, 1.0);
    EXPECT_EQ(h1.bars[0].death, std::sqrt(2.0));
    EXPECT_EQ(betti_at(k, 1.2, 1), 1u);
    EXPECT_EQ(betti_at(k, 0.9, 1), 0u);
    EXPECT_EQ(betti_at(k, 1.5, 1), 0u);
}

TEST(Persistence, MaxDimTooSmall) {
    const auto k = build_vr(PointCloud({{0.0}, {1.0}}), 1);
    EXPECT_THROW(compute_diagram(k, 1), ContractError);
}

TEST(Persistence, TruncationLeavesInfiniteBars) {
    const PointCloud c({{0.0}, {1.0}, {5.0}});
    const auto h0 = vr_diagram(pairwise_distances(c), 0, 2.0);
    EXPECT_EQ(h0.infinite_count(), 2u);
    EXPECT_EQ(h0.finite_count(), 1u);
}

TEST(Persistence, UnionFindMatchesReduction) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial) % 49;
        const auto cloud = random_cloud(rng, n, 3);
        const auto dm = pairwise_distances(cloud);
        const double cutoff = trial % 2 ? kInfinity : 0.4;
        const auto fast = h0_diagram(dm, cutoff);
        const auto slow = compute_diagram(build_vr(dm, 1, cutoff), 0);
        EXPECT_EQ(fast.bars, slow.bars);
    }
}

TEST(Persistence, ReductionMatchesBettiOracle) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial) % 5;
        const auto k = build_vr(random_cloud(rng, n, 2), 2);
        for (int degree : {0, 1}) {
            const auto dgm = compute_diagram(k, degree);
            for (const auto& s : k.simplices()) EXPECT_EQ(alive(dgm, s.value), betti_at(k, s.value, degree));
        }
    }
}

TEST(Persistence, TotalPersistenceBoundedByBarCount) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(trial) % 6;
        const auto dm = pairwise_distances(random_cloud(rng, n, 2));
        for (int degree : {0, 1}) {
            const auto dgm = vr_diagram(dm, degree);
            EXPECT_LE(dgm.finite_count(), n_ell(n, degree));
            EXPECT_LE(total_persistence(dgm), static_cast<double>(n_ell(n, degree)) * dm.max_entry());
        }
    }
}

TEST(Persistence, CappedDiagramEqualsClampedFullDiagram) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const auto dm = pairwise_distances(random_cloud(rng, 12, 2));
        const double cap = 0.2 + 0.05 * trial;
        for (int degree : {0, 1}) {
            const auto full = vr_diagram(dm, degree);
            std::vector<Bar> expected;
            for (const auto& b : full.bars) {
                const double d = b.finite() ? std::min(b.death, cap) : b.death;
                if (b.birth < d) expected.push_back({b.birth, d});
            }
            std::sort(expected.begin(), expected.end(), [](const Bar& x, const Bar& y) {
                return x.birth < y.birth || (x.birth == y.birth && x.death < y.death);
            });
            EXPECT_EQ(vr_diagram_capped(dm, degree, cap).bars, expected);
        }
    }
}
