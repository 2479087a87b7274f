#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "topochange/errors.hpp"
#include "topochange/geometry.hpp"
#include "topochange/pljs.hpp"

using namespace topochange;

namespace {

PersistenceDiagram dgm(std::vector<Bar> bars, int degree = 0) {
    PersistenceDiagram d;
    d.degree = degree;
    d.bars = std::move(bars);
    return d;
}

// Independent JS distance: midpoint rule on a uniform grid of `cells` cells, natural log / ln 2.
double dense_js(const DensityOnInterval& p, const DensityOnInterval& q, int cells) {
    const double s = p.cutoff();
    const double h = s / cells;
    double acc = 0;
    for (int i = 0; i < cells; ++i) {
        const double t = (i + 0.5) * h;
        const double u = p.fn(t), v = q.fn(t), m = 0.5 * (u + v);
        double f = 0;
        if (u > 0) f += 0.5 * u * std::log(u / m);
        if (v > 0) f += 0.5 * v * std::log(v / m);
        acc += f * h;
    }
    return std::sqrt(std::max(0.0, acc / std::log(2.0)));
}

PLJSParams params(int layers, double s, double gamma, double theta) {
    PLJSParams p;
    p.layers = layers;
    p.cutoff = s;
    p.gamma = gamma;
    p.theta = theta;
    return p;
}

}  // namespace

TEST(Density, EmptyDiagramIsUniform) {
    const auto p = density_from_diagram(dgm({}), params(3, 2.0, 0.0, 0.011));
    for (double v : p.fn.values()) EXPECT_DOUBLE_EQ(v, 0.5);
}

TEST(Density, GammaOneIsUniform) {
    const auto p = density_from_diagram(dgm({{0.1, 0.9}}), params(3, 1.0, 1.0, 0.3));
    for (double v : p.fn.values()) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Density, SingleBarHandValue) {
    const auto p = density_from_diagram(dgm({{0, 2}}), params(1, 2.0, 0.0, 0.5));
    EXPECT_NEAR(p.fn(1.0), 1.25 / 1.5, 1e-15);
    EXPECT_NEAR(p.fn.integral(), 1.0, 1e-12);
}

TEST(Density, IntegratesToOneWithinBounds) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Bar> bars;
        for (int i = 0; i < trial % 12; ++i) { double x = u(rng), y = u(rng); if (x != y) bars.push_back({std::min(x, y), std::max(x, y)}); }
        const auto par = params(1 + trial % 4, 1.0, 0.9 * u(rng), 0.005 + 0.995 * u(rng));
        const auto p = density_from_diagram(dgm(bars), par);
        const auto c = continuity_constants(par);
        EXPECT_NEAR(p.fn.integral(), 1.0, 1e-9);
        for (double v : p.fn.values()) {
            EXPECT_GE(v, c.a_star * (1 - 1e-12));
            EXPECT_LE(v, c.a_upper * (1 + 1e-12));
        }
    }
}

TEST(JS, IdenticalIsZeroAndDisjointIsOne) {
    const auto p = density_from_diagram(dgm({{0.1, 0.6}}), params(2, 1.0, 0.0, 0.011));
    EXPECT_EQ(js_distance(p, p), 0.0);
    // Step densities approximated by steep piecewise-linear ramps on disjoint halves.
    const double e = 1e-9;
    const DensityOnInterval left{PiecewiseLinear({0, 0.5 - e, 0.5, 1}, {2, 2, 0, 0})};
    const DensityOnInterval right{PiecewiseLinear({0, 0.5, 0.5 + e, 1}, {0, 0, 2, 2})};
    EXPECT_NEAR(js_distance(left, right, 4096, ZeroDensity::allow), 1.0, 1e-6);
    EXPECT_THROW(js_distance(left, right), ContractError);
}

TEST(JS, AgreesWithDenseOracle) {
    const auto par = params(1, 2.0, 0.0, 0.5);
    const auto u = density_from_diagram(dgm({}), par);
    const auto q = density_from_diagram(dgm({{0, 2}}), par);
    const double value = js_distance(u, q);
    EXPECT_GT(value, 0.0);
    EXPECT_NEAR(value, dense_js(u, q, 1000000), 1e-6);
}

TEST(JS, GridConvergence) {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Bar> a, b;
        for (int i = 0; i < 10; ++i) { double x = 0.4 * u(rng); a.push_back({x, x + 0.6 * u(rng) + 1e-3}); }
        for (int i = 0; i < 10; ++i) { double x = 0.4 * u(rng); b.push_back({x, x + 0.6 * u(rng) + 1e-3}); }
        const auto par = params(3, 1.0, 0.0, 0.011);
        const auto p = density_from_diagram(dgm(a), par);
        const auto q = density_from_diagram(dgm(b), par);
        EXPECT_LT(std::abs(js_distance(p, q, 4096) - js_distance(p, q, 8192)), 1e-6);
        EXPECT_NEAR(js_distance(p, q, 4096), dense_js(p, q, 1000000), 1e-6);
    }
}

TEST(Statistic, SymmetricBoundedAndDegenerate) {
    const auto par = params(3, 1.0, 0.0, 0.011);
    const auto a = dgm({{0, 0.3}, {0, 0.5}});
    const auto b = dgm({{0, 0.9}});
    const double ab = pljs_statistic(a, b, par);
    EXPECT_EQ(ab, pljs_statistic(b, a, par));
    EXPECT_GT(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_EQ(pljs_statistic(a, a, par), 0.0);
    EXPECT_EQ(pljs_statistic(a, b, params(3, 1.0, 1.0, 0.011)), 0.0);
    EXPECT_THROW(pljs_statistic(a, dgm({}, 1), par), InputError);
}

TEST(Statistic, SquareVersusCollinearIsPositive) {
    const auto sq = rescale_windows({PointCloud({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), PointCloud({{0, 0}, {1, 0}, {2, 0}, {3, 0}})});
    const auto par = params(3, sq.cutoff, 0.0, 0.011);
    const auto da = vr_diagram_capped(pairwise_distances(sq.scaled_windows[0]), 0, par.cutoff);
    const auto db = vr_diagram_capped(pairwise_distances(sq.scaled_windows[1]), 0, par.cutoff);
    const double value = pljs_statistic(da, db, par);
    EXPECT_GT(value, 0.0);
    const auto pa = density_from_diagram(da, par), pb = density_from_diagram(db, par);
    EXPECT_NEAR(value, dense_js(pa, pb, 1000000), 1e-6);
}

TEST(Params, Validation) {
    EXPECT_THROW(params(0, 1, 0, 0.1).validate(), InputError);
    EXPECT_THROW(params(1, 0, 0, 0.1).validate(), InputError);
    EXPECT_THROW(params(1, 1, 1.5, 0.1).validate(), InputError);
    EXPECT_THROW(params(1, 1, 0, 0.0).validate(), InputError);
    EXPECT_THROW(params(1, 1, 0, 1.5).validate(), InputError);
    auto p = params(1, 1, 0, 0.1);
    p.js_grid = 1;
    EXPECT_THROW(p.validate(), InputError);
}

TEST(Constants, DefaultFloorAndIdentities) {
    const auto c = continuity_constants(params(3, 1.0, 0.0, 0.011));
    EXPECT_NEAR(c.a_star, 0.011 / 1.011, 1e-15);
    EXPECT_GE(c.a_star, 0.01);
    EXPECT_DOUBLE_EQ(c.c_js, 1.0 * c.c_phi * c.c_density);
    EXPECT_DOUBLE_EQ(c.c_delta, std::sqrt(c.c_js));
    EXPECT_DOUBLE_EQ(c.c_T, std::sqrt(2.0) * c.c_delta);
    EXPECT_THROW(continuity_constants(params(3, 1.0, 1.0, 0.5)), DegenerateDataError);
}

TEST(Constants, HandFormulas) {
    const double g = 0.2, th = 0.3, s = 2.0;
    const auto c = continuity_constants(params(2, s, g, th));
    EXPECT_NEAR(c.a_upper, (1 + 2 * 0.8 / 0.3) / 2.0, 1e-14);
    EXPECT_NEAR(c.c_phi, 1.3 / (0.5 * std::log(2.0)) * (1 + 2 * 0.8 / 0.3), 1e-12);
    EXPECT_NEAR(c.c_density, 8 * 0.8 / 4.0 * (1 / 0.3 + 1 / 0.09), 1e-12);
}

TEST(Constants, StrictlyDecreasingInGammaAndTheta) {
    for (int i = 1; i < 9; ++i) {
        for (int j = 1; j < 9; ++j) {
            const double g = i / 10.0, th = j / 10.0;
            const auto base = continuity_constants(params(1, 1, g, th));
            const auto up_g = continuity_constants(params(1, 1, g + 0.05, th));
            const auto up_t = continuity_constants(params(1, 1, g, th + 0.05));
            EXPECT_LT(up_g.c_phi, base.c_phi);
            EXPECT_LT(up_g.c_density, base.c_density);
            EXPECT_LT(up_t.c_phi, base.c_phi);
            EXPECT_LT(up_t.c_density, base.c_density);
        }
    }
}

TEST(Recommend, Examples) {
    EXPECT_DOUBLE_EQ(theta_min(0.01), 0.01 / 0.99);
    auto r = recommend_params(0.01);
    EXPECT_EQ(r.gamma, 0.0);
    EXPECT_DOUBLE_EQ(r.theta, 0.011);
    r = recommend_params(0.01, 0.05);
    EXPECT_DOUBLE_EQ(r.theta, 0.005);
    EXPECT_NEAR(r.gamma, 0.00505, 1e-15);
    r = recommend_params(0.5);
    EXPECT_EQ(r.gamma, 0.0);
    EXPECT_EQ(r.theta, 1.0);
    EXPECT_THROW(recommend_params(1.0), InputError);
    EXPECT_THROW(recommend_params(0.0), InputError);
}
