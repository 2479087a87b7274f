#include "topochange/pljs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "topochange/errors.hpp"

namespace topochange {

void PLJSParams::validate() const {
    if (degree < 0) throw InputError("degree must be nonnegative");
    if (layers < 1) throw InputError("layers M must be >= 1");
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw InputError("cutoff S must be positive and finite");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw InputError("gamma must lie in [0, 1]");
    if (!(theta > 0.0 && theta <= 1.0)) throw InputError("theta must lie in (0, 1]");
    if (js_grid < 2) throw InputError("js_grid must be >= 2");
}

DensityOnInterval density_from_diagram(const PersistenceDiagram& dgm, const PLJSParams& params) {
    params.validate();
    const auto lsum = landscape_sum(dgm, params.layers, params.cutoff);
    const double s = params.cutoff;
    const double a_max = max_landscape_mass(params.layers, s);
    const double denom = lsum.mass + params.theta * a_max;
    const double uniform = 1.0 / s;
    const double reg_floor = params.theta * a_max * uniform;

    std::vector<double> values = lsum.fn.values();
    for (double& v : values) {
        v = (1.0 - params.gamma) * (v + reg_floor) / denom + params.gamma * uniform;
    }
    return {PiecewiseLinear(lsum.fn.breakpoints(), std::move(values))};
}

double js_distance(const DensityOnInterval& p, const DensityOnInterval& q, std::size_t grid,
                   ZeroDensity zeros) {
    if (grid < 2) throw InputError("js grid must have at least two nodes");
    const double s = p.cutoff();
    if (p.fn.lower() != 0.0 || q.fn.lower() != 0.0 || q.cutoff() != s) {
        throw ContractError("js_distance needs densities on the same interval [0, S]");
    }

    std::vector<double> nodes;
    nodes.reserve(grid + p.fn.breakpoints().size() + q.fn.breakpoints().size());
    nodes.insert(nodes.end(), p.fn.breakpoints().begin(), p.fn.breakpoints().end());
    nodes.insert(nodes.end(), q.fn.breakpoints().begin(), q.fn.breakpoints().end());
    const double step = s / static_cast<double>(grid - 1);
    for (std::size_t i = 1; i + 1 < grid; ++i) nodes.push_back(step * static_cast<double>(i));
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    auto term = [](double u, double m) { return u > 0.0 ? u * std::log(u / m) : 0.0; };

    // Merged walk over the two breakpoint lists for evaluation at sorted nodes.
    auto evaluate_sorted = [&nodes](const PiecewiseLinear& f) {
        std::vector<double> out(nodes.size());
        const auto& xs = f.breakpoints();
        const auto& ys = f.values();
        std::size_t seg = 0;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const double t = nodes[k];
            while (seg + 2 < xs.size() && xs[seg + 1] < t) ++seg;
            const double w = (t - xs[seg]) / (xs[seg + 1] - xs[seg]);
            out[k] = t == xs[seg + 1] ? ys[seg + 1] : ys[seg] + w * (ys[seg + 1] - ys[seg]);
        }
        return out;
    };
    const auto pv = evaluate_sorted(p.fn);
    const auto qv = evaluate_sorted(q.fn);

    std::vector<double> integrand(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double u = pv[k];
        const double v = qv[k];
        if (zeros == ZeroDensity::reject && !(u > 0.0 && v > 0.0)) {
            throw ContractError("js_distance received a density that is not strictly positive");
        }
        if (u < 0.0 || v < 0.0) {
            throw ContractError("js_distance received a negative density value");
        }
        const double m = 0.5 * (u + v);
        integrand[k] = m > 0.0 ? 0.5 * (term(u, m) + term(v, m)) : 0.0;
    }
    double js = 0.0;
    for (std::size_t k = 1; k < nodes.size(); ++k) {
        js += 0.5 * (integrand[k] + integrand[k - 1]) * (nodes[k] - nodes[k - 1]);
    }
    js /= std::numbers::ln2;
    js = std::clamp(js, 0.0, 1.0);
    return std::sqrt(js);
}

double pljs_statistic(const PersistenceDiagram& a, const PersistenceDiagram& b, const PLJSParams& params) {
    if (a.degree != b.degree) {
        throw InputError("pljs_statistic requires diagrams of the same degree");
    }
    return js_distance(density_from_diagram(a, params), density_from_diagram(b, params), params.js_grid);
}

ContinuityConstants continuity_constants(const PLJSParams& params) {
    params.validate();
    const double g = params.gamma;
    const double th = params.theta;
    const double s = params.cutoff;
    if (g >= 1.0) {
        throw DegenerateDataError("continuity constants are degenerate for gamma = 1");
    }
    ContinuityConstants c{};
    c.a_star = (g + th) / ((1.0 + th) * s);
    c.a_upper = (1.0 + 2.0 * (1.0 - g) / th) / s;
    c.c_phi = (1.0 + th) / ((g + th) * std::numbers::ln2) * (1.0 + 2.0 * (1.0 - g) / th);
    c.c_density = 8.0 * (1.0 - g) / (s * s) * (1.0 / th + 1.0 / (th * th));
    c.c_js = s * c.c_phi * c.c_density;
    c.c_delta = std::sqrt(c.c_js);
    c.c_T = std::sqrt(2.0) * c.c_delta;
    return c;
}

double theta_min(double a_min) {
    if (!(a_min > 0.0 && a_min < 1.0)) throw InputError("a_min must lie in (0, 1)");
    return a_min / (1.0 - a_min);
}

double gamma_min(double a_min, double theta) {
    if (!(a_min > 0.0 && a_min < 1.0)) throw InputError("a_min must lie in (0, 1)");
    return a_min - (1.0 - a_min) * theta;
}

RecommendedParams recommend_params(double a_min, std::optional<double> mu_estimate) {
    const double tmin = theta_min(a_min);
    if (mu_estimate) {
        const double mu = *mu_estimate;
        if (!(mu > 0.0 && mu <= 1.0)) {
            throw InputError("mu estimate must lie in (0, 1]");
        }
        if (mu / 10.0 < tmin) {
            const double th = mu / 10.0;
            return {gamma_min(a_min, th), th};
        }
    }
    // Round up to three decimals; the small offset absorbs representation error in tmin * 1000.
    double th = std::ceil(tmin * 1000.0 - 1e-9) / 1000.0;
    if (th > 1.0) th = 1.0;
    const double g = std::max(0.0, gamma_min(a_min, th));
    return {g, th};
}

}  // namespace topochange
