#include "topochange/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "topochange/errors.hpp"
#include "topochange/persistence.hpp"

namespace topochange {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<std::size_t> complement(std::span<const std::size_t> first, std::size_t n) {
    std::vector<std::size_t> rest;
    rest.reserve(n - first.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (k < first.size() && first[k] == i) {
            ++k;
        } else {
            rest.push_back(i);
        }
    }
    return rest;
}

}  // namespace

void TestConfig::validate() const {
    if (n_shuffles < 1) throw InputError("number of shuffles must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
    if (degrees.empty()) throw InputError("at least one homology degree is required");
    for (int d : degrees) {
        if (d < 0) throw InputError("homology degrees must be nonnegative");
    }
    pljs.validate();
}

SplitStatistic::SplitStatistic(const PointCloud& a, const PointCloud& b, const PLJSParams& params)
    : params_(params), n1_(a.size()), distances_(pairwise_distances(PointCloud::concat(a, b))) {
    params_.validate();
}

double SplitStatistic::operator()(std::span<const std::size_t> first) const {
    const auto rest = complement(first, distances_.size());
    const auto da = vr_diagram_capped(distances_.subset(first), params_.degree, params_.cutoff);
    const auto db = vr_diagram_capped(distances_.subset(rest), params_.degree, params_.cutoff);
    return pljs_statistic(da, db, params_);
}

double SplitStatistic::observed() const {
    std::vector<std::size_t> first(n1_);
    std::iota(first.begin(), first.end(), std::size_t{0});
    return (*this)(first);
}

TestResult p_value_from_statistics(double observed, std::span<const double> shuffled) {
    TestResult r;
    r.observed = observed;
    r.n_used = shuffled.size();
    r.exceedances = static_cast<std::size_t>(
        std::count_if(shuffled.begin(), shuffled.end(), [observed](double s) { return s >= observed; }));
    r.p_value = static_cast<double>(1 + r.exceedances) / static_cast<double>(r.n_used + 1);
    return r;
}

TestResult mc_p_value(const PointCloud& a, const PointCloud& b, const TestConfig& config, int degree) {
    config.validate();
    if (a.dim() != b.dim()) throw InputError("clouds differ in dimension");
    PLJSParams params = config.pljs;
    params.degree = degree;
    const SplitStatistic stat(a, b, params);
    const std::size_t n = stat.pooled_size();
    const std::size_t n1 = stat.n1();

    const double observed = stat.observed();
    std::vector<double> shuffled(config.n_shuffles);
    std::vector<std::size_t> pool(n);
    for (std::size_t j = 0; j < config.n_shuffles; ++j) {
        std::seed_seq seq{static_cast<std::uint64_t>(config.seed), static_cast<std::uint64_t>(degree),
                          static_cast<std::uint64_t>(j)};
        std::mt19937_64 rng(seq);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < n1; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
        std::vector<std::size_t> first(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n1));
        std::sort(first.begin(), first.end());
        shuffled[j] = stat(first);
    }

    TestResult r = p_value_from_statistics(observed, shuffled);
    r.degree = degree;
    r.n1 = n1;
    r.n2 = n - n1;
    r.seed = config.seed;
    return r;
}

double exact_p_value(const PointCloud& a, const PointCloud& b, const PLJSParams& pljs, int degree,
                     std::uint64_t budget) {
    if (a.dim() != b.dim()) throw InputError("clouds differ in dimension");
    const std::size_t n1 = a.size();
    const std::size_t n = n1 + b.size();
    // Count splits in floating point; only the comparison with the budget matters.
    double splits = 1.0;
    for (std::size_t i = 1; i <= n1; ++i) splits = splits * static_cast<double>(n - n1 + i) / static_cast<double>(i);
    if (splits > static_cast<double>(budget)) {
        throw GuardError("exact enumeration needs " + std::to_string(static_cast<long double>(splits)) +
                         " splits, above the budget; use mc_p_value");
    }

    PLJSParams params = pljs;
    params.degree = degree;
    const SplitStatistic stat(a, b, params);
    const double observed = stat.observed();

    std::vector<std::size_t> first(n1);
    std::iota(first.begin(), first.end(), std::size_t{0});
    std::uint64_t total = 0;
    std::uint64_t hits = 0;
    while (true) {
        ++total;
        if (stat(first) >= observed) ++hits;
        // Next combination in lexicographic order.
        std::size_t i = n1;
        while (i > 0 && first[i - 1] == n - n1 + i - 1) --i;
        if (i == 0) break;
        ++first[i - 1];
        for (std::size_t j = i; j < n1; ++j) first[j] = first[j - 1] + 1;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

std::vector<bool> bonferroni(std::span<const double> p_values, double alpha) {
    std::vector<bool> out(p_values.size());
    const double threshold = alpha / static_cast<double>(p_values.size());
    for (std::size_t i = 0; i < p_values.size(); ++i) out[i] = p_values[i] <= threshold;
    return out;
}

std::vector<bool> holm(std::span<const double> p_values, double alpha) {
    const std::size_t m = p_values.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return p_values[x] < p_values[y]; });
    std::vector<bool> out(m, false);
    for (std::size_t k = 0; k < m; ++k) {
        if (p_values[order[k]] > alpha / static_cast<double>(m - k)) break;
        out[order[k]] = true;
    }
    return out;
}

double mc_se_bound(std::size_t n) { return 0.5 / std::sqrt(static_cast<double>(n) + 1.0); }

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t pair, std::uint64_t degree) {
    return splitmix64(splitmix64(splitmix64(base) ^ pair) ^ degree);
}

MultiTestReport adjacent_windows_test(const std::vector<PointCloud>& windows, const TestConfig& config) {
    config.validate();
    if (windows.size() < 2) throw InputError("adjacent window testing needs at least two windows");
    for (const auto& w : windows) {
        if (w.dim() != windows.front().dim()) throw InputError("windows differ in dimension");
    }

    MultiTestReport report;
    report.n_windows = windows.size();
    report.alpha = config.alpha;
    report.n_shuffles = config.n_shuffles;
    report.bonferroni_threshold = config.alpha / static_cast<double>(windows.size() - 1);
    report.se_bound = mc_se_bound(config.n_shuffles);
    report.grid_spacing = 1.0 / static_cast<double>(config.n_shuffles + 1);

    for (int degree : config.degrees) {
        DegreeFamily family;
        family.degree = degree;
        std::vector<double> p_values;
        for (std::size_t pair = 0; pair + 1 < windows.size(); ++pair) {
            TestConfig local = config;
            local.seed = derive_seed(config.seed, pair, static_cast<std::uint64_t>(degree));
            family.results.push_back(mc_p_value(windows[pair], windows[pair + 1], local, degree));
            p_values.push_back(family.results.back().p_value);
        }
        family.bonferroni = bonferroni(p_values, config.alpha);
        family.holm = holm(p_values, config.alpha);
        report.families.push_back(std::move(family));
    }
    return report;
}

}  // namespace topochange
