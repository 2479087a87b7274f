#pragma once

#include <vector>

#include "topochange/persistence.hpp"

namespace topochange {

/// Continuous piecewise-linear function on [breakpoints.front(), breakpoints.back()].
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    /// Breakpoints must be strictly increasing and match `values` in length (>= 2).
    PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values);

    const std::vector<double>& breakpoints() const noexcept { return xs_; }
    const std::vector<double>& values() const noexcept { return ys_; }
    double lower() const { return xs_.front(); }
    double upper() const { return xs_.back(); }

    /// Linear interpolation; ContractError outside the domain.
    double operator()(double t) const;

    /// Exact integral over the whole domain (trapezoid over breakpoints).
    double integral() const;

    double max_value() const;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
};

/// Tent function of a bar: min(t - b, d - t) clipped at zero.
double tent(const Bar& bar, double t);

/// Finite bars clamped into [0, S]^2; bars that collapse to zero length are dropped.
std::vector<Bar> clamp_bars(const PersistenceDiagram& dgm, double cutoff);

/// The first `layers` persistence landscape layers on [0, S], computed exactly.
std::vector<PiecewiseLinear> landscape_layers(const PersistenceDiagram& dgm, int layers, double cutoff);

struct LandscapeSum {
    PiecewiseLinear fn;
    double mass = 0.0;
    int layers_used = 0;
    double cutoff = 0.0;
};

/// Sum of the first M landscape layers on [0, S] and its integral (the landscape mass).
LandscapeSum landscape_sum(const PersistenceDiagram& dgm, int layers, double cutoff);

/// M * S^2 / 4, the largest possible landscape mass.
double max_landscape_mass(int layers, double cutoff);

}  // namespace topochange
