#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "topochange/errors.hpp"
#include "topochange/filtration.hpp"

using namespace topochange;

namespace {

PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t d) {
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> coords(n * d);
    for (auto& v : coords) v = u(rng);
    return PointCloud(d, coords);
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST(BuildVR, ThreePointValues) {
    const PointCloud c({{0, 0}, {3, 0}, {0, 4}});
    const auto k = build_vr(c, 2);
    ASSERT_EQ(k.size(), 7u);
    for (const auto& s : k.simplices()) {
        if (s.dim() == 0) EXPECT_EQ(s.value, 0.0);
    }
    EXPECT_EQ(k.simplices().back().dim(), 2);
    EXPECT_EQ(k.simplices().back().value, 5.0);
    std::vector<double> edges;
    for (const auto& s : k.simplices()) if (s.dim() == 1) edges.push_back(s.value);
    EXPECT_EQ(edges, (std::vector<double>{3.0, 4.0, 5.0}));
}

TEST(BuildVR, UnitSquareCutoff) {
    const PointCloud c({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto k = build_vr(c, 2, 1.2);
    std::size_t edges = 0, triangles = 0;
    for (const auto& s : k.simplices()) {
        if (s.dim() == 1) {
            ++edges;
            EXPECT_EQ(s.value, 1.0);
        }
        if (s.dim() == 2) ++triangles;
    }
    EXPECT_EQ(edges, 4u);
    EXPECT_EQ(triangles, 0u);
}

TEST(BuildVR, SinglePoint) {
    const auto k = build_vr(PointCloud({{2.0, 3.0}}), 3, 0.5);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k.simplices()[0].value, 0.0);
}

TEST(BuildVR, InvalidArguments) {
    const PointCloud c({{0.0}, {1.0}});
    EXPECT_THROW(build_vr(c, -1), InputError);
    EXPECT_THROW(build_vr(c, 1, 0.0), InputError);
}

TEST(BuildVR, CountsOrderAndMonotonicity) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 8;
        const auto cloud = random_cloud(rng, n, 2);
        const auto k = build_vr(cloud, 3);
        std::vector<std::size_t> count(4, 0);
        for (const auto& s : k.simplices()) ++count[static_cast<std::size_t>(s.dim())];
        for (std::uint64_t dim = 0; dim <= 3; ++dim) EXPECT_EQ(count[dim], choose(n, dim + 1));

        const auto& simplices = k.simplices();
        for (std::size_t i = 0; i < simplices.size(); ++i) {
            const auto& s = simplices[i];
            // Diameter oracle.
            double diam = 0.0;
            for (auto a : s.vertices)
                for (auto b : s.vertices) {
                    const auto pa = cloud.point(a), pb = cloud.point(b);
                    diam = std::max(diam, std::sqrt((pa[0] - pb[0]) * (pa[0] - pb[0]) + (pa[1] - pb[1]) * (pa[1] - pb[1])));
                }
            EXPECT_EQ(s.value, diam);
            if (i > 0) {
                const auto& p = simplices[i - 1];
                const bool ordered = p.value < s.value ||
                                     (p.value == s.value && (p.dim() < s.dim() ||
                                                             (p.dim() == s.dim() && p.vertices < s.vertices)));
                EXPECT_TRUE(ordered);
            }
            for (std::size_t f : k.boundary(i)) {
                EXPECT_LT(f, i);
                EXPECT_LE(simplices[f].value, s.value);
            }
        }
    }
}

TEST(BuildVR, Deterministic) {
    std::mt19937_64 rng(4);
    const auto cloud = random_cloud(rng, 8, 3);
    const auto a = build_vr(cloud, 2, 0.8);
    const auto b = build_vr(cloud, 2, 0.8);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a.simplices()[i].vertices, b.simplices()[i].vertices);
        EXPECT_EQ(a.simplices()[i].value, b.simplices()[i].value);
    }
}

TEST(FiltrationComplex, IndexOfAndBoundary) {
    const PointCloud c({{0, 0}, {3, 0}, {0, 4}});
    const auto k = build_vr(c, 2);
    const auto tri = k.index_of({0, 1, 2});
    ASSERT_GE(tri, 0);
    const auto faces = k.boundary(static_cast<std::size_t>(tri));
    ASSERT_EQ(faces.size(), 3u);
    for (auto f : faces) EXPECT_EQ(k.simplices()[f].dim(), 1);
    EXPECT_EQ(k.index_of({0, 3}), -1);
    EXPECT_TRUE(k.boundary(static_cast<std::size_t>(k.index_of({1}))).empty());
}
