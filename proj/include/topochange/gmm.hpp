#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topochange/geometry.hpp"

namespace topochange {

/// Gaussian mixture with possibly singular covariances.
struct GMMSpec {
    std::vector<double> weights;
    std::vector<Eigen::VectorXd> means;
    std::vector<Eigen::MatrixXd> covariances;
    double ridge = 1e-6;  // density evaluation only

    std::size_t dim() const { return means.empty() ? 0 : static_cast<std::size_t>(means.front().size()); }
    std::size_t components() const { return weights.size(); }

    /// Throws InputError unless weights sum to 1 (1e-12), shapes agree, covariances are
    /// symmetric (1e-10) and have no eigenvalue below -1e-10.
    void validate() const;
};

/// Principal square root via symmetric eigendecomposition, eigenvalues in [-1e-10, 0) clipped to 0.
Eigen::MatrixXd principal_sqrt(const Eigen::MatrixXd& sigma);

/// Validated mixture with cached square roots, for repeated sampling.
class GaussianMixture {
public:
    explicit GaussianMixture(GMMSpec spec);

    const GMMSpec& spec() const noexcept { return spec_; }
    std::size_t dim() const noexcept { return spec_.dim(); }

    /// n points: mu_k + sqrt(eta) * Sigma_k^{1/2} z.
    PointCloud sample(double eta, std::size_t n, std::mt19937_64& rng) const;

private:
    GMMSpec spec_;
    std::vector<Eigen::MatrixXd> roots_;
};

PointCloud sample(const GMMSpec& spec, double eta, std::size_t n, std::uint64_t seed);

/// Log-density of the model with covariances eta * Sigma_k + ridge * I, precomputed once.
class MixtureDensity {
public:
    /// InputError if a ridged covariance is singular (use a positive ridge).
    MixtureDensity(const GMMSpec& spec, double eta);

    double log_density(std::span<const double> x) const;
    double mean_log_density(const PointCloud& cloud) const;

private:
    std::vector<double> log_weights_;
    std::vector<Eigen::VectorXd> means_;
    std::vector<Eigen::MatrixXd> chol_;  // lower factors
    std::vector<double> log_norm_;      // -0.5 (d log 2pi + log det)
};

double log_density(const GMMSpec& spec, double eta, std::span<const double> x);

struct ScalingRow {
    double eta;
    std::size_t rep;
    double mean_loglik;
    double sum_h0, max_h0, sum_h1, max_h1;  // NaN when the degree was not requested
};

struct ScalingSummary {
    double eta;
    double mean_loglik, sd_loglik;
    double mean_sum_h0, sd_sum_h0, mean_max_h0, sd_max_h0;
    double mean_sum_h1, sd_sum_h1, mean_max_h1, sd_max_h1;
};

struct ScalingExperiment {
    std::vector<ScalingRow> rows;
    std::vector<ScalingSummary> summary;
};

/// For each eta and repetition: sample n points from the eta-scaled model, evaluate the mean
/// log-density under the eta = 1 model, and record total/max persistence in the listed degrees.
ScalingExperiment scaling_experiment(const GMMSpec& spec, const std::vector<double>& eta_grid, std::size_t n,
                                     const std::vector<int>& degrees, std::size_t reps, std::uint64_t seed);

GMMSpec read_gmm_spec(const std::string& path);
GMMSpec parse_gmm_spec(const std::string& json_text);
std::string gmm_spec_to_json(const GMMSpec& spec);

/// CSV with header eta,rep,mean_loglik,sum_h0,max_h0,sum_h1,max_h1; "nan" marks skipped degrees.
std::string scaling_csv(const ScalingExperiment& experiment);

}  // namespace topochange
