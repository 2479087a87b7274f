#include "topochange/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "topochange/diagram_metrics.hpp"
#include "topochange/errors.hpp"
#include "topochange/persistence.hpp"

namespace topochange {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

// C(n, k) with overflow reported as kMax.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // acc * (n - k + i) is divisible by i; reduce by the gcd first to delay overflow.
        const std::uint64_t g = std::gcd(acc, i);
        const std::uint64_t factor = (n - k + i) / (i / g);
        if (acc / g > kMax / factor) return kMax;
        acc = acc / g * factor;
    }
    return acc;
}

class Accumulator {
public:
    void add(double x) {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }
    MeanEstimate estimate() const {
        const double var = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
        return {mean_, std::sqrt(var / static_cast<double>(std::max<std::size_t>(n_, 1)))};
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

PersistenceStats degree_stats(const PointCloud& cloud, int ell) {
    return persistence_stats(vr_diagram(pairwise_distances(cloud), ell));
}

void check_common(std::uint64_t n_points, int ell, double p) {
    if (n_points == 0) throw InputError("N must be positive");
    if (ell < 0) throw InputError("degree must be nonnegative");
    if (!(p >= 1.0) || !std::isfinite(p)) throw InputError("p must be >= 1");
}

nlohmann::json estimate_json(const MeanEstimate& e) { return {{"mean", e.mean}, {"se", e.se}}; }

nlohmann::json constants_json(const MomentConstants& c) {
    return {{"n_ell", c.n_ell}, {"c_vr", c.c_vr}, {"kappa", c.kappa}, {"m_p", c.m_p}, {"v_p", c.v_p},
            {"c0", c.c0},       {"c1", c.c1},     {"c_total", c.c_total}, {"u_epsilon", c.u_epsilon}};
}

}  // namespace

std::uint64_t n_ell(std::uint64_t n_points, int ell) {
    if (ell < 0) throw InputError("degree must be nonnegative");
    const auto k = static_cast<std::uint64_t>(ell);
    const std::uint64_t result = std::min(binomial(n_points, k + 1), binomial(n_points, k + 2));
    if (result == kMax) throw InputError("n_ell overflows 64 bits");
    return result;
}

double kappa(int d, double p) {
    if (d < 1) throw InputError("dimension must be >= 1");
    if (!(p > 0.0) || !std::isfinite(p)) throw InputError("p must be positive");
    const double dd = static_cast<double>(d);
    return std::exp(0.5 * p * std::log(2.0) + std::lgamma(0.5 * (dd + p)) - std::lgamma(0.5 * dd));
}

double vr_moment_constant(std::uint64_t n_points, int ell, double p) {
    check_common(n_points, ell, p);
    return std::pow(2.0, p) * static_cast<double>(n_points) * std::pow(static_cast<double>(n_ell(n_points, ell)), p);
}

MomentConstants gmm_constants(const GMMSpec& spec, std::uint64_t n_points, int ell, double p, double epsilon) {
    spec.validate();
    check_common(n_points, ell, p);
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InputError("epsilon must lie in (0, 1]");
    MomentConstants c{};
    c.n_ell = n_ell(n_points, ell);
    c.c_vr = vr_moment_constant(n_points, ell, p);
    c.kappa = kappa(static_cast<int>(spec.dim()), p);
    double mean_term = 0.0;
    double cov_term = 0.0;
    for (std::size_t k = 0; k < spec.components(); ++k) {
        mean_term += spec.weights[k] * std::pow(spec.means[k].norm(), p);
        cov_term += spec.weights[k] * std::pow(std::max(0.0, spec.covariances[k].trace()), 0.5 * p);
    }
    const double two_pm1 = std::pow(2.0, p - 1.0);
    c.m_p = two_pm1 * mean_term;
    c.v_p = two_pm1 * c.kappa * cov_term;
    c.c0 = c.m_p * c.c_vr;
    c.c1 = c.v_p * c.c_vr;
    c.c_total = c.c0 + c.c1;
    c.u_epsilon = std::pow(c.c_total / epsilon, 1.0 / p);
    return c;
}

MomentReport verify_moment_bound(const CloudSampler& sampler, std::uint64_t n_points, int ell, double p,
                                 std::size_t trials, std::uint64_t seed) {
    check_common(n_points, ell, p);
    if (trials < 2) throw InputError("need at least two trials");
    const double c_vr = vr_moment_constant(n_points, ell, p);

    Accumulator total, max, norm;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::seed_seq seq{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(trial)};
        std::mt19937_64 rng(seq);
        const PointCloud cloud = sampler(rng);
        if (cloud.size() != n_points) throw ContractError("sampler returned a cloud of the wrong size");
        const auto stats = degree_stats(cloud, ell);
        total.add(std::pow(stats.total, p));
        max.add(std::pow(stats.max, p));
        const auto x1 = cloud.point(0);
        double sq = 0.0;
        for (double v : x1) sq += v * v;
        norm.add(std::pow(std::sqrt(sq), p));
    }

    MomentReport r{};
    r.n_points = n_points;
    r.ell = ell;
    r.p = p;
    r.trials = trials;
    r.seed = seed;
    r.c_vr = c_vr;
    r.first_point_norm_p = norm.estimate();
    auto check = [&](const Accumulator& acc) {
        MomentCheck c{};
        c.lhs = acc.estimate();
        c.bound = c_vr * r.first_point_norm_p.mean;
        c.tolerance = 3.0 * std::hypot(c.lhs.se, c_vr * r.first_point_norm_p.se);
        c.pass = c.lhs.mean <= c.bound + c.tolerance;
        return c;
    };
    r.total = check(total);
    r.max = check(max);
    r.pass = r.total.pass && r.max.pass;
    return r;
}

TailReport verify_tail_bound(const GMMSpec& spec, std::uint64_t n_points, int ell, double p,
                             const std::vector<double>& eta_grid, const std::vector<double>& t_grid,
                             std::size_t trials, std::uint64_t seed) {
    check_common(n_points, ell, p);
    if (eta_grid.empty()) throw InputError("eta grid must be nonempty");
    for (double eta : eta_grid) {
        if (!(eta >= 1.0) || !std::isfinite(eta)) throw InputError("every eta must be >= 1");
    }
    for (double t : t_grid) {
        if (!(t > 0.0) || !std::isfinite(t)) throw InputError("every t must be positive");
    }
    if (trials < 2) throw InputError("need at least two trials");

    TailReport report{};
    report.constants = gmm_constants(spec, n_points, ell, p, 1.0);
    report.n_points = n_points;
    report.ell = ell;
    report.p = p;
    report.trials = trials;
    report.seed = seed;
    report.pass = true;
    const double c = report.constants.c_total;
    const GaussianMixture mixture(spec);

    for (std::size_t e = 0; e < eta_grid.size(); ++e) {
        const double eta = eta_grid[e];
        const double root = std::sqrt(eta);
        std::vector<double> scaled_total(trials), scaled_max(trials);
        Accumulator pow_total, pow_max, plain_total;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            std::seed_seq seq{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(e),
                              static_cast<std::uint64_t>(trial)};
            std::mt19937_64 rng(seq);
            const auto stats = degree_stats(mixture.sample(eta, static_cast<std::size_t>(n_points), rng), ell);
            scaled_total[trial] = stats.total / root;
            scaled_max[trial] = stats.max / root;
            pow_total.add(std::pow(scaled_total[trial], p));
            pow_max.add(std::pow(scaled_max[trial], p));
            plain_total.add(scaled_total[trial]);
        }
        TailMoment m{eta, pow_total.estimate(), pow_max.estimate(), plain_total.estimate(), false};
        m.pass = m.total.mean <= c + 3.0 * m.total.se && m.max.mean <= c + 3.0 * m.max.se;
        report.pass = report.pass && m.pass;
        report.moments.push_back(m);

        for (double t : t_grid) {
            auto freq = [&](const std::vector<double>& v) {
                const auto hits = std::count_if(v.begin(), v.end(), [t](double x) { return x >= t; });
                return static_cast<double>(hits) / static_cast<double>(v.size());
            };
            TailCell cell{eta, t, c / std::pow(t, p), freq(scaled_total), freq(scaled_max), false};
            cell.pass = cell.freq_total <= cell.bound && cell.freq_max <= cell.bound;
            report.pass = report.pass && cell.pass;
            report.cells.push_back(cell);
        }
    }
    return report;
}

std::string to_json(const MomentConstants& c) { return constants_json(c).dump(2); }

std::string to_json(const MomentReport& r) {
    auto check_json = [](const MomentCheck& c) {
        return nlohmann::json{{"lhs", estimate_json(c.lhs)},
                              {"bound", c.bound},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}};
    };
    nlohmann::json doc{{"config", {{"N", r.n_points}, {"ell", r.ell}, {"p", r.p}, {"trials", r.trials}, {"seed", r.seed}}},
                       {"c_vr", r.c_vr},
                       {"first_point_norm_p", estimate_json(r.first_point_norm_p)},
                       {"total", check_json(r.total)},
                       {"max", check_json(r.max)},
                       {"pass", r.pass}};
    return doc.dump(2);
}

std::string to_json(const TailReport& r) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : r.cells) {
        cells.push_back({{"eta", c.eta}, {"t", c.t}, {"bound", c.bound}, {"freq_total", c.freq_total},
                         {"freq_max", c.freq_max}, {"pass", c.pass}});
    }
    nlohmann::json moments = nlohmann::json::array();
    for (const auto& m : r.moments) {
        moments.push_back({{"eta", m.eta},
                           {"scaled_total_p", estimate_json(m.total)},
                           {"scaled_max_p", estimate_json(m.max)},
                           {"scaled_total_mean", estimate_json(m.mean_scaled_total)},
                           {"pass", m.pass}});
    }
    nlohmann::json doc{{"config", {{"N", r.n_points}, {"ell", r.ell}, {"p", r.p}, {"trials", r.trials}, {"seed", r.seed}}},
                       {"constants", constants_json(r.constants)},
                       {"cells", cells},
                       {"moments", moments},
                       {"pass", r.pass}};
    return doc.dump(2);
}

}  // namespace topochange
