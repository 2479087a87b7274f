#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "topochange/errors.hpp"
#include "topochange/landscape.hpp"

using namespace topochange;

namespace {

PersistenceDiagram dgm(std::vector<Bar> bars) {
    PersistenceDiagram d;
    d.bars = std::move(bars);
    return d;
}

// k-th largest tent value straight from the definition (1-based k).
double kth_tent(const std::vector<Bar>& bars, std::size_t k, double t) {
    std::vector<double> v;
    for (const auto& b : bars) v.push_back(std::max(0.0, std::min(t - b.birth, b.death - t)));
    std::sort(v.begin(), v.end(), std::greater<>());
    return k <= v.size() ? v[k - 1] : 0.0;
}

}  // namespace

TEST(PiecewiseLinear, EvaluationAndIntegral) {
    const PiecewiseLinear f({0, 1, 3}, {0, 2, 0});
    EXPECT_EQ(f(0.5), 1.0);
    EXPECT_EQ(f(2.0), 1.0);
    EXPECT_EQ(f(3.0), 0.0);
    EXPECT_EQ(f.integral(), 3.0);
    EXPECT_THROW(f(-0.1), ContractError);
    EXPECT_THROW(f(3.1), ContractError);
    EXPECT_THROW(PiecewiseLinear({0, 0}, {1, 1}), ContractError);
}

TEST(Landscape, SingleBar) {
    const auto s = landscape_sum(dgm({{0, 2}}), 1, 2);
    EXPECT_EQ(s.fn(1.0), 1.0);
    EXPECT_EQ(s.mass, 1.0);
    EXPECT_EQ(s.fn.lower(), 0.0);
    EXPECT_EQ(s.fn.upper(), 2.0);
}

TEST(Landscape, EmptyDiagram) {
    const auto s = landscape_sum(dgm({}), 4, 1.5);
    EXPECT_EQ(s.mass, 0.0);
    EXPECT_EQ(s.fn.max_value(), 0.0);
}

TEST(Landscape, TwoOverlappingBars) {
    const auto layers = landscape_layers(dgm({{0, 2}, {1, 3}}), 2, 3);
    EXPECT_EQ(layers[0](1.5), 0.5);
    EXPECT_EQ(layers[1](1.5), 0.5);
    EXPECT_EQ(landscape_sum(dgm({{0, 2}, {1, 3}}), 2, 3).fn(1.5), 1.0);
}

TEST(Landscape, InvalidArguments) {
    EXPECT_THROW(landscape_sum(dgm({}), 0, 1), InputError);
    EXPECT_THROW(landscape_sum(dgm({}), 1, 0), InputError);
    EXPECT_THROW(landscape_sum(dgm({}), 1, kInfinity), InputError);
}

TEST(Landscape, ClampingAndInfiniteBars) {
    const auto bars = clamp_bars(dgm({{0.2, 5}, {0.5, kInfinity}, {-1, 0.4}, {1.5, 2}}), 1.0);
    ASSERT_EQ(bars.size(), 2u);
    EXPECT_EQ(bars[0], (Bar{0.2, 1.0}));
    EXPECT_EQ(bars[1], (Bar{0.0, 0.4}));
}

TEST(Landscape, LayersMatchDefinitionOnGrid) {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Bar> bars;
        const int n = trial % 9;
        for (int i = 0; i < n; ++i) { double x = u(rng), y = u(rng); if (x != y) bars.push_back({std::min(x, y), std::max(x, y)}); }
        const int m = 1 + trial % 4;
        const auto layers = landscape_layers(dgm(bars), m, 1.0);
        const auto sum = landscape_sum(dgm(bars), m, 1.0);
        for (int g = 0; g <= 1000; ++g) {
            const double t = g / 1000.0;
            double total = 0;
            for (int k = 1; k <= m; ++k) {
                const double want = kth_tent(bars, static_cast<std::size_t>(k), t);
                EXPECT_NEAR(layers[static_cast<std::size_t>(k - 1)](t), want, 1e-12);
                total += want;
            }
            EXPECT_NEAR(sum.fn(t), total, 1e-12);
            EXPECT_LE(sum.fn(t), m * std::min(t, 1.0 - t) + 1e-12);
        }
        // Dense trapezoid agrees with the exact mass.
        double dense = 0;
        const int grid = 100000;
        double prev = sum.fn(0.0);
        for (int g = 1; g <= grid; ++g) {
            const double cur = sum.fn(static_cast<double>(g) / grid);
            dense += 0.5 * (prev + cur) / grid;
            prev = cur;
        }
        EXPECT_NEAR(sum.mass, dense, 1e-6 * std::max(1e-12, sum.mass) + 1e-12);
        EXPECT_LE(sum.mass, max_landscape_mass(m, 1.0));
    }
}

TEST(Landscape, PermutationInvariant) {
    std::vector<Bar> bars{{0.1, 0.7}, {0.2, 0.5}, {0.0, 0.9}, {0.3, 0.4}, {0.2, 0.5}};
    const auto a = landscape_sum(dgm(bars), 3, 1.0);
    std::reverse(bars.begin(), bars.end());
    const auto b = landscape_sum(dgm(bars), 3, 1.0);
    EXPECT_EQ(a.fn.breakpoints(), b.fn.breakpoints());
    EXPECT_EQ(a.fn.values(), b.fn.values());
    EXPECT_EQ(a.mass, b.mass);
}
