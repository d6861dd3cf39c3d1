#include "expsum/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "expsum/errors.hpp"

namespace expsum {

namespace {

constexpr double kPi = std::numbers::pi;

double v0_residual(double v) {
    return std::sin(kPi * v) * kPi * v + std::cos(kPi * v) - 1.0;
}

double v0_residual_slope(double v) {
    return kPi * kPi * v * std::cos(kPi * v);
}

// Uniform draw on [lo, hi] built directly from the generator's bits so
// the sequence does not depend on the standard library's distribution
// implementation.
double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double unit = double(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

struct SimplexOutcome {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
};

// Nelder-Mead with the standard coefficients (reflect 1, expand 2,
// contract 1/2, shrink 1/2). Stops when the spread of vertex values
// drops below tol. Fully deterministic: ordering ties are broken by
// vertex index.
template <class F>
SimplexOutcome nelder_mead(const std::vector<double>& x0,
                           const std::vector<double>& steps, double tol,
                           int max_iters, F&& f) {
    const std::size_t dim = x0.size();
    std::vector<std::vector<double>> pts(dim + 1, x0);
    std::vector<double> vals(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) {
        pts[i + 1][i] += steps[i];
    }
    for (std::size_t i = 0; i <= dim; ++i) {
        vals[i] = f(pts[i]);
    }

    std::vector<std::size_t> order(dim + 1);
    auto sort_vertices = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return vals[a] < vals[b];
                         });
        std::vector<std::vector<double>> p2(dim + 1);
        std::vector<double> v2(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) {
            p2[i] = std::move(pts[order[i]]);
            v2[i] = vals[order[i]];
        }
        pts = std::move(p2);
        vals = std::move(v2);
    };

    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    auto blend = [&](std::vector<double>& out, double towards) {
        // out = centroid + towards * (centroid - worst)
        for (std::size_t k = 0; k < dim; ++k) {
            out[k] = centroid[k] + towards * (centroid[k] - pts[dim][k]);
        }
    };

    bool converged = false;
    for (int iter = 0; iter < max_iters; ++iter) {
        sort_vertices();
        if (vals[dim] - vals[0] <= tol) {
            converged = true;
            break;
        }
        for (std::size_t k = 0; k < dim; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                s += pts[i][k];
            }
            centroid[k] = s / double(dim);
        }

        blend(trial, 1.0);
        const double fr = f(trial);
        if (fr < vals[0]) {
            blend(trial2, 2.0);
            const double fe = f(trial2);
            if (fe < fr) {
                pts[dim] = trial2;
                vals[dim] = fe;
            } else {
                pts[dim] = trial;
                vals[dim] = fr;
            }
            continue;
        }
        if (fr < vals[dim - 1]) {
            pts[dim] = trial;
            vals[dim] = fr;
            continue;
        }
        if (fr < vals[dim]) {
            // outside contraction, halfway from centroid to the reflection
            blend(trial2, 0.5);
            const double fc = f(trial2);
            if (fc <= fr) {
                pts[dim] = trial2;
                vals[dim] = fc;
                continue;
            }
        } else {
            // inside contraction, halfway from centroid back to the worst
            blend(trial2, -0.5);
            const double fc = f(trial2);
            if (fc < vals[dim]) {
                pts[dim] = trial2;
                vals[dim] = fc;
                continue;
            }
        }
        for (std::size_t i = 1; i <= dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) {
                pts[i][k] = pts[0][k] + 0.5 * (pts[i][k] - pts[0][k]);
            }
            vals[i] = f(pts[i]);
        }
    }
    sort_vertices();
    return {pts[0], vals[0], converged};
}

FrequencySet unpack(const std::vector<double>& x) {
    FrequencySet freqs;
    freqs.lambdas.reserve(x.size() / 2);
    for (std::size_t k = 0; k + 1 < x.size(); k += 2) {
        freqs.lambdas.push_back({x[k], x[k + 1]});
    }
    return freqs;
}

void check_config(const OptimizeConfig& config) {
    if (config.n < 1) {
        throw std::invalid_argument("need at least one frequency");
    }
    if (config.starts < 1) {
        throw std::invalid_argument("need at least one start");
    }
    if (!(config.start_box.u_min <= config.start_box.u_max) ||
        !(config.start_box.v_min <= config.start_box.v_max)) {
        throw std::invalid_argument("start box is inverted");
    }
    if (!(config.simplex_tol > 0.0)) {
        throw std::invalid_argument("simplex tolerance must be positive");
    }
    if (config.max_iters < 1) {
        throw std::invalid_argument("iteration cap must be positive");
    }
}

} // namespace

double solve_v0() {
    double lo = 0.1;
    double hi = 0.9;
    if (!(v0_residual(lo) > 0.0) || !(v0_residual(hi) < 0.0)) {
        throw InternalConsistencyError("v0 bracket lost its sign change");
    }
    for (int i = 0; i < 20; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (v0_residual(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double v = 0.5 * (lo + hi);
    for (int i = 0; i < 50; ++i) {
        const double g = v0_residual(v);
        if (std::fabs(g) < 1e-13) {
            return v;
        }
        const double step = g / v0_residual_slope(v);
        const double next = v - step;
        v = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
    }
    throw InternalConsistencyError("v0 refinement did not reach 1e-13");
}

OptimizeResult minimize_phi(const Signal& signal,
                            const OptimizeConfig& config) {
    check_config(config);
    const double norm = norm_sq(signal);
    const std::size_t dim = std::size_t(config.n) * 2;

    long evaluations = 0;
    auto objective = [&](const std::vector<double>& x) {
        ++evaluations;
        for (double c : x) {
            if (!std::isfinite(c)) {
                return norm;
            }
        }
        double value;
        try {
            value = phi(unpack(x), signal);
        } catch (const IllConditionedBasis&) {
            // A simplex can wander into the thin shell where frequencies
            // almost coincide but escape the cluster merge. Treat the
            // point as worthless rather than abort the whole search.
            return norm;
        }
        return std::isfinite(value) ? value : norm;
    };

    // All starting points come out of the generator before any search
    // runs, so the draw sequence is a function of the seed alone.
    std::mt19937_64 rng(config.seed);
    std::vector<std::vector<double>> starts(config.starts,
                                            std::vector<double>(dim));
    const StartBox& box = config.start_box;
    for (auto& start : starts) {
        for (std::size_t k = 0; k < dim; k += 2) {
            start[k] = uniform(rng, box.u_min, box.u_max);
            start[k + 1] = uniform(rng, box.v_min, box.v_max);
        }
    }

    const double u_width = box.u_max - box.u_min;
    const double v_width = box.v_max - box.v_min;
    std::vector<double> steps(dim);
    for (std::size_t k = 0; k < dim; k += 2) {
        steps[k] = u_width > 0.0 ? 0.1 * u_width : 0.5;
        steps[k + 1] = v_width > 0.0 ? 0.1 * v_width : 0.5;
    }

    OptimizeResult result;
    bool have_best = false;
    std::vector<double> best_x;
    for (const auto& start : starts) {
        const SimplexOutcome outcome = nelder_mead(
            start, steps, config.simplex_tol, config.max_iters, objective);
        if (outcome.converged) {
            ++result.starts_converged;
        }
        if (!have_best || outcome.value < result.best_phi) {
            have_best = true;
            result.best_phi = outcome.value;
            best_x = outcome.x;
        }
    }

    result.best_freqs = unpack(best_x);
    result.fit = best_fit(result.best_freqs, signal);
    result.evaluations = evaluations;
    return result;
}

ConjectureSummary explore_conjecture(const GridSpec& grid,
                                     const Signal& signal) {
    if (grid.u_steps < 1 || grid.v_steps < 1) {
        throw std::invalid_argument("grid needs at least one step per axis");
    }
    if (!(grid.u_min <= grid.u_max) || !(grid.v_min <= grid.v_max)) {
        throw std::invalid_argument("grid range is inverted");
    }

    std::vector<Complex> points;
    points.reserve(std::size_t(grid.u_steps) * std::size_t(grid.v_steps));
    for (int i = 0; i < grid.u_steps; ++i) {
        const double u =
            grid.u_steps == 1
                ? grid.u_min
                : grid.u_min + (grid.u_max - grid.u_min) * double(i) /
                                   double(grid.u_steps - 1);
        for (int j = 0; j < grid.v_steps; ++j) {
            const double v =
                grid.v_steps == 1
                    ? grid.v_min
                    : grid.v_min + (grid.v_max - grid.v_min) * double(j) /
                                       double(grid.v_steps - 1);
            points.push_back({u, v});
        }
    }

    const FrequencySet probe_tol; // carries the default cluster tolerance
    ConjectureSummary summary;
    summary.grid_min.phi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (std::abs(points[i] - points[j]) < probe_tol.cluster_tol) {
                continue; // coincident pair, a different regime by design
            }
            FrequencySet pair;
            pair.lambdas = {points[i], points[j]};
            const double value = phi(pair, signal);
            ++summary.pairs_evaluated;
            if (value < summary.grid_min.phi) {
                summary.grid_min = {points[i], points[j], value};
            }
            if (value < 0.25) {
                summary.below_quarter.push_back({points[i], points[j], value});
            }
        }
    }

    for (double eps : {0.5, 0.1, 0.02}) {
        FrequencySet pair;
        pair.lambdas = {Complex{0.0, eps}, Complex{0.0, -eps}};
        const double value = phi(pair, signal);
        summary.shrinking.emplace_back(eps, value);
        if (value < 0.25) {
            summary.below_quarter.push_back(
                {pair.lambdas[0], pair.lambdas[1], value});
        }
    }
    if (std::fabs(summary.shrinking[1].second - 0.25) >= 2e-2 ||
        std::fabs(summary.shrinking[2].second - 0.25) >= 1e-3) {
        throw InternalConsistencyError(
            "shrinking conjugate pairs drifted away from the 1/4 limit");
    }
    return summary;
}

} // namespace expsum
