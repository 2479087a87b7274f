#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "topochange/geometry.hpp"
#include "topochange/pljs.hpp"

namespace topochange {

struct TestConfig {
    std::size_t n_shuffles = 200;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    PLJSParams pljs;
    std::vector<int> degrees{0, 1};

    /// InputError unless n >= 1, alpha in (0, 1), degrees nonempty and pljs valid.
    void validate() const;
};

struct TestResult {
    double observed = 0.0;
    double p_value = 1.0;
    std::size_t exceedances = 0;
    std::size_t n_used = 0;
    int degree = 0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::uint64_t seed = 0;
};

/// Two-sample statistic on a pooled sample: the first n1 rows of the pooled distance matrix
/// against the rest, or any split given by a sorted index set.
class SplitStatistic {
public:
    SplitStatistic(const PointCloud& a, const PointCloud& b, const PLJSParams& params);

    std::size_t n1() const noexcept { return n1_; }
    std::size_t pooled_size() const noexcept { return distances_.size(); }

    /// Statistic for the split where `first` (sorted) forms the first sample.
    double operator()(std::span<const std::size_t> first) const;
    double observed() const;

private:
    PLJSParams params_;
    std::size_t n1_;
    DistanceMatrix distances_;
};

/// (1 + K) / (n + 1) with K the number of shuffled statistics >= observed.
TestResult p_value_from_statistics(double observed, std::span<const double> shuffled);

TestResult mc_p_value(const PointCloud& a, const PointCloud& b, const TestConfig& config, int degree);

/// Exact permutation p-value by enumerating all C(N1+N2, N1) splits.
/// GuardError when the number of splits exceeds `budget`.
double exact_p_value(const PointCloud& a, const PointCloud& b, const PLJSParams& pljs, int degree,
                     std::uint64_t budget = 1'000'000);

/// Reject iff p <= alpha / m.
std::vector<bool> bonferroni(std::span<const double> p_values, double alpha);

/// Holm step-down: with ascending p_(1..m), reject while p_(k) <= alpha / (m - k + 1).
std::vector<bool> holm(std::span<const double> p_values, double alpha);

/// Worst-case Monte Carlo standard error 1 / (2 sqrt(n + 1)).
double mc_se_bound(std::size_t n);

struct DegreeFamily {
    int degree = 0;
    std::vector<TestResult> results;  // one per adjacent pair
    std::vector<bool> bonferroni;
    std::vector<bool> holm;
};

struct MultiTestReport {
    std::size_t n_windows = 0;
    double alpha = 0.05;
    std::size_t n_shuffles = 0;
    double bonferroni_threshold = 0.0;
    double se_bound = 0.0;
    double grid_spacing = 0.0;
    std::vector<DegreeFamily> families;
};

/// Monte Carlo tests on every adjacent window pair and requested degree, with Bonferroni and
/// Holm decisions inside each degree. Pair seeds are derived from config.seed and recorded.
MultiTestReport adjacent_windows_test(const std::vector<PointCloud>& windows, const TestConfig& config);

/// Seed used for adjacent pair `pair` and degree `degree`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t pair, std::uint64_t degree);

}  // namespace topochange
