#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "topochange/geometry.hpp"
#include "topochange/gmm.hpp"

namespace topochange {

/// min{C(N, ell+1), C(N, ell+2)}, the bound on the number of finite bars in degree ell.
/// InputError if the value does not fit in 64 bits.
std::uint64_t n_ell(std::uint64_t n_points, int ell);

/// E||Z||^p for a standard normal Z in R^d: 2^{p/2} Gamma((d+p)/2) / Gamma(d/2).
double kappa(int d, double p);

struct MomentConstants {
    std::uint64_t n_ell;
    double c_vr;
    double kappa;
    double m_p;
    double v_p;
    double c0;
    double c1;
    double c_total;
    double u_epsilon;
};

/// C^VR = 2^p N n_ell^p.
double vr_moment_constant(std::uint64_t n_points, int ell, double p);

/// Every constant of the GMM moment bound for clouds of N points.
MomentConstants gmm_constants(const GMMSpec& spec, std::uint64_t n_points, int ell, double p, double epsilon);

using CloudSampler = std::function<PointCloud(std::mt19937_64&)>;

/// Monte Carlo summary of one statistic: mean and standard error.
struct MeanEstimate {
    double mean = 0.0;
    double se = 0.0;
};

struct MomentCheck {
    MeanEstimate lhs;   // E[L^p]
    double bound;       // C^VR * empirical E||X_1||^p
    double tolerance;   // 3 combined standard errors
    bool pass;
};

struct MomentReport {
    std::uint64_t n_points;
    int ell;
    double p;
    std::size_t trials;
    std::uint64_t seed;
    double c_vr;
    MeanEstimate first_point_norm_p;  // E||X_1||^p
    MomentCheck total;
    MomentCheck max;
    bool pass;
};

/// E[L^p] <= C^VR E||X_1||^p checked for total and maximum persistence in degree ell.
/// Pass when the empirical left side does not exceed the empirical right side by more than
/// three combined standard errors.
MomentReport verify_moment_bound(const CloudSampler& sampler, std::uint64_t n_points, int ell, double p,
                                 std::size_t trials, std::uint64_t seed);

struct TailCell {
    double eta;
    double t;
    double bound;            // C / t^p, may exceed 1
    double freq_total;       // P(total / sqrt(eta) >= t)
    double freq_max;
    bool pass;               // both frequencies <= bound
};

struct TailMoment {
    double eta;
    MeanEstimate total;  // E[(total / sqrt(eta))^p]
    MeanEstimate max;
    MeanEstimate mean_scaled_total;  // E[total / sqrt(eta)]
    bool pass;                       // both p-th moments <= C + 3 SE
};

struct TailReport {
    MomentConstants constants;
    std::uint64_t n_points;
    int ell;
    double p;
    std::size_t trials;
    std::uint64_t seed;
    std::vector<TailCell> cells;
    std::vector<TailMoment> moments;
    bool pass;
};

/// Empirical exceedance frequencies of L(X^eta)/sqrt(eta) against C / t^p on an (eta, t) grid,
/// plus the p-th moments at each eta against C.
TailReport verify_tail_bound(const GMMSpec& spec, std::uint64_t n_points, int ell, double p,
                             const std::vector<double>& eta_grid, const std::vector<double>& t_grid,
                             std::size_t trials, std::uint64_t seed);

std::string to_json(const MomentConstants& c);
std::string to_json(const MomentReport& r);
std::string to_json(const TailReport& r);

}  // namespace topochange
