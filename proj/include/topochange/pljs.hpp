#pragma once

#include <cstddef>
#include <optional>

#include "topochange/landscape.hpp"
#include "topochange/persistence.hpp"

namespace topochange {

/// Parameters of the landscape Jensen-Shannon statistic.
struct PLJSParams {
    int degree = 0;
    int layers = 3;          // M
    double cutoff = 1.0;     // S
    double gamma = 0.0;      // uniform mixing weight, [0, 1]
    double theta = 0.011;    // mass regularization, (0, 1]
    std::size_t js_grid = 4096;

    /// Throws InputError when any field is out of its domain.
    void validate() const;
};

/// A probability density on [0, S] represented exactly as a piecewise-linear function.
struct DensityOnInterval {
    PiecewiseLinear fn;

    double cutoff() const { return fn.upper(); }
};

struct ContinuityConstants {
    double a_star;   // density floor
    double a_upper;  // density ceiling
    double c_phi;
    double c_density;
    double c_js;
    double c_delta;
    double c_T;
};

enum class ZeroDensity { reject, allow };

/// Density obtained by normalizing the landscape sum with mass regularization theta,
/// then mixing with the uniform density with weight gamma.
DensityOnInterval density_from_diagram(const PersistenceDiagram& dgm, const PLJSParams& params);

/// Base-2 Jensen-Shannon distance, in [0, 1]. The integral uses the trapezoid rule on the
/// union of both breakpoint sets refined with a uniform grid of `grid` nodes.
/// With ZeroDensity::reject a zero density value is a ContractError.
double js_distance(const DensityOnInterval& p, const DensityOnInterval& q, std::size_t grid = 4096,
                   ZeroDensity zeros = ZeroDensity::reject);

/// JS distance between the densities of two diagrams of the same degree.
double pljs_statistic(const PersistenceDiagram& a, const PersistenceDiagram& b, const PLJSParams& params);

/// Density bounds and Hoelder constants; DegenerateDataError for gamma = 1.
ContinuityConstants continuity_constants(const PLJSParams& params);

/// Smallest theta keeping the density floor at a_min with gamma = 0.
double theta_min(double a_min);

/// gamma needed to keep the floor at a_min for a given theta (may be <= 0).
double gamma_min(double a_min, double theta);

struct RecommendedParams {
    double gamma;
    double theta;
};

/// Default: gamma = 0 and theta_min rounded up to three decimals (capped at 1). When the
/// normalized mass estimate mu gives mu / 10 < theta_min, use theta = mu / 10 and gamma_min.
RecommendedParams recommend_params(double a_min, std::optional<double> mu_estimate = std::nullopt);

}  // namespace topochange
