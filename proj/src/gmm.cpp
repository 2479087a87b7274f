#include "topochange/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "topochange/diagram_metrics.hpp"
#include "topochange/errors.hpp"
#include "topochange/persistence.hpp"

namespace topochange {

namespace {

constexpr double kEigenTolerance = 1e-10;

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

void GMMSpec::validate() const {
    const std::size_t k = weights.size();
    if (k == 0) throw InputError("mixture needs at least one component");
    if (means.size() != k || covariances.size() != k) {
        throw InputError("weights, means and covariances must have the same number of components");
    }
    const auto d = means.front().size();
    if (d == 0) throw InputError("mixture dimension must be positive");
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
            throw InputError("mixture weights must be finite and nonnegative");
        }
        total += weights[i];
        if (means[i].size() != d) throw InputError("component means differ in dimension");
        if (!means[i].allFinite()) throw InputError("component means must be finite");
        const auto& s = covariances[i];
        if (s.rows() != d || s.cols() != d) throw InputError("covariance shape does not match the mean dimension");
        if (!s.allFinite()) throw InputError("covariances must be finite");
        if ((s - s.transpose()).cwiseAbs().maxCoeff() > kEigenTolerance) {
            throw InputError("covariance matrices must be symmetric");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -kEigenTolerance) {
            throw InputError("covariance matrices must be positive semidefinite");
        }
    }
    if (std::abs(total - 1.0) > 1e-12) throw InputError("mixture weights must sum to 1");
    if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw InputError("ridge must be finite and nonnegative");
}

Eigen::MatrixXd principal_sqrt(const Eigen::MatrixXd& sigma) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
    if (eig.info() != Eigen::Success) throw InputError("eigendecomposition failed");
    Eigen::VectorXd values = eig.eigenvalues();
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values[i] < -kEigenTolerance) throw InputError("matrix is not positive semidefinite");
        values[i] = values[i] > 0.0 ? std::sqrt(values[i]) : 0.0;
    }
    return eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
}

GaussianMixture::GaussianMixture(GMMSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    roots_.reserve(spec_.components());
    for (const auto& s : spec_.covariances) roots_.push_back(principal_sqrt(s));
}

PointCloud GaussianMixture::sample(double eta, std::size_t n, std::mt19937_64& rng) const {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InputError("eta must be positive");
    if (n == 0) throw InputError("sample size must be positive");
    const auto d = static_cast<Eigen::Index>(dim());
    const double scale = std::sqrt(eta);
    std::discrete_distribution<std::size_t> pick(spec_.weights.begin(), spec_.weights.end());
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> coords;
    coords.reserve(n * dim());
    Eigen::VectorXd z(d);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = pick(rng);
        for (Eigen::Index j = 0; j < d; ++j) z[j] = normal(rng);
        const Eigen::VectorXd x = spec_.means[k] + scale * (roots_[k] * z);
        coords.insert(coords.end(), x.data(), x.data() + d);
    }
    return PointCloud(dim(), std::move(coords));
}

PointCloud sample(const GMMSpec& spec, double eta, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return GaussianMixture(spec).sample(eta, n, rng);
}

MixtureDensity::MixtureDensity(const GMMSpec& spec, double eta) {
    spec.validate();
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InputError("eta must be positive");
    const auto d = static_cast<Eigen::Index>(spec.dim());
    for (std::size_t k = 0; k < spec.components(); ++k) {
        if (spec.weights[k] == 0.0) continue;
        Eigen::MatrixXd cov = eta * spec.covariances[k];
        cov.diagonal().array() += spec.ridge;
        Eigen::LLT<Eigen::MatrixXd> llt(cov);
        const Eigen::MatrixXd lower = llt.matrixL();
        const double scale = std::max(cov.diagonal().maxCoeff(), std::numeric_limits<double>::min());
        const double min_pivot = lower.diagonal().minCoeff();
        if (llt.info() != Eigen::Success || !(min_pivot * min_pivot > 1e-14 * scale)) {
            throw InputError("ridged covariance of component " + std::to_string(k) +
                             " is singular; use a positive ridge");
        }
        log_weights_.push_back(std::log(spec.weights[k]));
        means_.push_back(spec.means[k]);
        chol_.push_back(lower);
        const double log_det = 2.0 * lower.diagonal().array().log().sum();
        log_norm_.push_back(-0.5 * (static_cast<double>(d) * std::log(2.0 * std::numbers::pi) + log_det));
    }
}

double MixtureDensity::log_density(std::span<const double> x) const {
    const auto d = static_cast<Eigen::Index>(means_.front().size());
    if (static_cast<Eigen::Index>(x.size()) != d) throw InputError("point dimension does not match the mixture");
    const Eigen::Map<const Eigen::VectorXd> point(x.data(), d);
    std::vector<double> terms(means_.size());
    for (std::size_t k = 0; k < means_.size(); ++k) {
        const Eigen::VectorXd w = chol_[k].triangularView<Eigen::Lower>().solve(point - means_[k]);
        terms[k] = log_weights_[k] + log_norm_[k] - 0.5 * w.squaredNorm();
    }
    const double top = *std::max_element(terms.begin(), terms.end());
    if (!std::isfinite(top)) return top;
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - top);
    return top + std::log(sum);
}

double MixtureDensity::mean_log_density(const PointCloud& cloud) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) sum += log_density(cloud.point(i));
    return sum / static_cast<double>(cloud.size());
}

double log_density(const GMMSpec& spec, double eta, std::span<const double> x) {
    return MixtureDensity(spec, eta).log_density(x);
}

ScalingExperiment scaling_experiment(const GMMSpec& spec, const std::vector<double>& eta_grid, std::size_t n,
                                     const std::vector<int>& degrees, std::size_t reps, std::uint64_t seed) {
    if (eta_grid.empty()) throw InputError("eta grid must be nonempty");
    if (reps == 0) throw InputError("reps must be positive");
    const bool want_h0 = std::find(degrees.begin(), degrees.end(), 0) != degrees.end();
    const bool want_h1 = std::find(degrees.begin(), degrees.end(), 1) != degrees.end();
    for (int deg : degrees) {
        if (deg != 0 && deg != 1) throw InputError("scaling experiment supports degrees 0 and 1");
    }
    const GaussianMixture mixture(spec);
    const MixtureDensity evaluation(spec, 1.0);

    ScalingExperiment out;
    for (std::size_t e = 0; e < eta_grid.size(); ++e) {
        const double eta = eta_grid[e];
        for (std::size_t r = 0; r < reps; ++r) {
            std::seed_seq seq{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(e),
                              static_cast<std::uint64_t>(r)};
            std::mt19937_64 rng(seq);
            const PointCloud cloud = mixture.sample(eta, n, rng);
            ScalingRow row{eta, r, evaluation.mean_log_density(cloud), nan(), nan(), nan(), nan()};
            const DistanceMatrix dm = pairwise_distances(cloud);
            if (want_h0) {
                const auto stats = persistence_stats(vr_diagram(dm, 0));
                row.sum_h0 = stats.total;
                row.max_h0 = stats.max;
            }
            if (want_h1) {
                const auto stats = persistence_stats(vr_diagram(dm, 1));
                row.sum_h1 = stats.total;
                row.max_h1 = stats.max;
            }
            out.rows.push_back(row);
        }
    }

    auto mean_sd = [](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
        return std::pair{mean, sd};
    };
    for (std::size_t e = 0; e < eta_grid.size(); ++e) {
        std::vector<double> ll, s0, m0, s1, m1;
        for (std::size_t r = 0; r < reps; ++r) {
            const auto& row = out.rows[e * reps + r];
            ll.push_back(row.mean_loglik);
            s0.push_back(row.sum_h0);
            m0.push_back(row.max_h0);
            s1.push_back(row.sum_h1);
            m1.push_back(row.max_h1);
        }
        ScalingSummary s{};
        s.eta = eta_grid[e];
        std::tie(s.mean_loglik, s.sd_loglik) = mean_sd(ll);
        std::tie(s.mean_sum_h0, s.sd_sum_h0) = mean_sd(s0);
        std::tie(s.mean_max_h0, s.sd_max_h0) = mean_sd(m0);
        std::tie(s.mean_sum_h1, s.sd_sum_h1) = mean_sd(s1);
        std::tie(s.mean_max_h1, s.sd_max_h1) = mean_sd(m1);
        out.summary.push_back(s);
    }
    return out;
}

GMMSpec parse_gmm_spec(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid GMM spec JSON: ") + e.what());
    }
    GMMSpec spec;
    try {
        spec.weights = doc.at("weights").get<std::vector<double>>();
        for (const auto& mu : doc.at("means")) {
            const auto v = mu.get<std::vector<double>>();
            spec.means.emplace_back(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
        }
        for (const auto& cov : doc.at("covariances")) {
            const auto rows = cov.get<std::vector<std::vector<double>>>();
            Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                              static_cast<Eigen::Index>(rows.empty() ? 0 : rows.front().size()));
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (static_cast<Eigen::Index>(rows[i].size()) != m.cols()) {
                    throw InputError("covariance rows have different lengths");
                }
                for (std::size_t j = 0; j < rows[i].size(); ++j) {
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
                }
            }
            spec.covariances.push_back(std::move(m));
        }
        if (doc.contains("ridge")) spec.ridge = doc.at("ridge").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed GMM spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

GMMSpec read_gmm_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open GMM spec " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_gmm_spec(buffer.str());
}

std::string gmm_spec_to_json(const GMMSpec& spec) {
    nlohmann::json doc;
    doc["weights"] = spec.weights;
    doc["means"] = nlohmann::json::array();
    for (const auto& mu : spec.means) doc["means"].push_back(std::vector<double>(mu.data(), mu.data() + mu.size()));
    doc["covariances"] = nlohmann::json::array();
    for (const auto& s : spec.covariances) {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < s.rows(); ++i) {
            std::vector<double> row(static_cast<std::size_t>(s.cols()));
            for (Eigen::Index j = 0; j < s.cols(); ++j) row[static_cast<std::size_t>(j)] = s(i, j);
            rows.push_back(row);
        }
        doc["covariances"].push_back(rows);
    }
    doc["ridge"] = spec.ridge;
    return doc.dump(2);
}

std::string scaling_csv(const ScalingExperiment& experiment) {
    std::ostringstream out;
    out << "eta,rep,mean_loglik,sum_h0,max_h0,sum_h1,max_h1\n";
    out.precision(17);
    for (const auto& r : experiment.rows) {
        out << r.eta << ',' << r.rep << ',' << r.mean_loglik << ',' << r.sum_h0 << ',' << r.max_h0 << ','
            << r.sum_h1 << ',' << r.max_h1 << '\n';
    }
    return out.str();
}

}  // namespace topochange
