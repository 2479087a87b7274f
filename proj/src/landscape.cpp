#include "topochange/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "topochange/errors.hpp"

namespace topochange {

PiecewiseLinear::PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values)
    : xs_(std::move(breakpoints)), ys_(std::move(values)) {
    if (xs_.size() != ys_.size() || xs_.size() < 2) {
        throw ContractError("piecewise-linear function needs >= 2 matching breakpoints and values");
    }
    for (std::size_t i = 1; i < xs_.size(); ++i) {
        if (!(xs_[i] > xs_[i - 1])) {
            throw ContractError("breakpoints must be strictly increasing");
        }
    }
}

double PiecewiseLinear::operator()(double t) const {
    if (xs_.empty()) {
        throw ContractError("evaluating an empty piecewise-linear function");
    }
    if (t < xs_.front() || t > xs_.back()) {
        throw ContractError("piecewise-linear evaluation outside its domain");
    }
    auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
    if (it == xs_.end()) return ys_.back();
    const std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - xs_[lo]) / (xs_[hi] - xs_[lo]);
    return ys_[lo] + w * (ys_[hi] - ys_[lo]);
}

double PiecewiseLinear::integral() const {
    double sum = 0.0;
    for (std::size_t i = 1; i < xs_.size(); ++i) {
        sum += 0.5 * (ys_[i] + ys_[i - 1]) * (xs_[i] - xs_[i - 1]);
    }
    return sum;
}

double PiecewiseLinear::max_value() const { return *std::max_element(ys_.begin(), ys_.end()); }

double tent(const Bar& bar, double t) {
    return std::max(0.0, std::min(t - bar.birth, bar.death - t));
}

std::vector<Bar> clamp_bars(const PersistenceDiagram& dgm, double cutoff) {
    std::vector<Bar> out;
    for (const auto& bar : dgm.bars) {
        if (!bar.finite()) continue;
        const double b = std::max(bar.birth, 0.0);
        const double d = std::min(bar.death, cutoff);
        if (b < d) out.push_back({b, d});
    }
    return out;
}

namespace {

// Abscissae between which every tent keeps a fixed linear piece and a fixed rank:
// bar endpoints, peaks, and crossings of a rising piece with a falling piece.
std::vector<double> landscape_nodes(const std::vector<Bar>& bars, double cutoff) {
    std::vector<double> nodes{0.0, cutoff};
    for (const auto& bar : bars) {
        nodes.push_back(bar.birth);
        nodes.push_back(bar.death);
        nodes.push_back(0.5 * (bar.birth + bar.death));
    }
    for (const auto& up : bars) {
        const double up_peak = 0.5 * (up.birth + up.death);
        for (const auto& down : bars) {
            const double t = 0.5 * (up.birth + down.death);
            const double down_peak = 0.5 * (down.birth + down.death);
            if (t > up.birth && t < up_peak && t > down_peak && t < down.death) nodes.push_back(t);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

void check_args(int layers, double cutoff) {
    if (layers <= 0) {
        throw InputError("number of landscape layers must be positive");
    }
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
        throw InputError("landscape cutoff must be positive and finite");
    }
}

}  // namespace

std::vector<PiecewiseLinear> landscape_layers(const PersistenceDiagram& dgm, int layers, double cutoff) {
    check_args(layers, cutoff);
    const auto bars = clamp_bars(dgm, cutoff);
    const auto nodes = landscape_nodes(bars, cutoff);
    const auto m = static_cast<std::size_t>(layers);

    std::vector<std::vector<double>> values(m, std::vector<double>(nodes.size(), 0.0));
    std::vector<double> at(bars.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        for (std::size_t i = 0; i < bars.size(); ++i) at[i] = tent(bars[i], nodes[k]);
        const std::size_t top = std::min(m, at.size());
        std::partial_sort(at.begin(), at.begin() + static_cast<std::ptrdiff_t>(top), at.end(),
                          std::greater<>());
        for (std::size_t layer = 0; layer < top; ++layer) values[layer][k] = at[layer];
    }

    std::vector<PiecewiseLinear> out;
    out.reserve(m);
    for (auto& v : values) out.emplace_back(nodes, std::move(v));
    return out;
}

LandscapeSum landscape_sum(const PersistenceDiagram& dgm, int layers, double cutoff) {
    check_args(layers, cutoff);
    const auto bars = clamp_bars(dgm, cutoff);
    const auto nodes = landscape_nodes(bars, cutoff);
    const auto m = static_cast<std::size_t>(layers);

    std::vector<double> sum(nodes.size(), 0.0);
    std::vector<double> at(bars.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        for (std::size_t i = 0; i < bars.size(); ++i) at[i] = tent(bars[i], nodes[k]);
        const std::size_t top = std::min(m, at.size());
        std::partial_sort(at.begin(), at.begin() + static_cast<std::ptrdiff_t>(top), at.end(),
                          std::greater<>());
        double s = 0.0;
        for (std::size_t layer = 0; layer < top; ++layer) s += at[layer];
        sum[k] = s;
    }

    LandscapeSum result;
    result.fn = PiecewiseLinear(nodes, std::move(sum));
    result.mass = result.fn.integral();
    result.layers_used = layers;
    result.cutoff = cutoff;
    return result;
}

double max_landscape_mass(int layers, double cutoff) {
    return static_cast<double>(layers) * cutoff * cutoff / 4.0;
}

}  // namespace topochange
