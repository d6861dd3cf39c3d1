#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "expsum/objective.hpp"

namespace expsum {

// Rectangle in the (u, v) = (Re lambda, Im lambda) plane that starting
// points are drawn from.
struct StartBox {
    double u_min = -2.0;
    double u_max = 2.0;
    double v_min = -3.0;
    double v_max = 3.0;
};

struct OptimizeConfig {
    int n = 1;               // number of frequencies
    int starts = 32;         // independent Nelder-Mead restarts
    std::uint64_t seed = 0;  // seeds the start-point draws
    StartBox start_box;
    double simplex_tol = 1e-10;  // stop when the vertex value spread drops below
    int max_iters = 2000;        // per-start iteration cap
};

struct OptimizeResult {
    FrequencySet best_freqs;
    double best_phi = 0.0;
    LinearFit fit;            // linear layer re-solved at the best frequencies
    int starts_converged = 0; // starts that hit simplex_tol before max_iters
    long evaluations = 0;     // total phi evaluations across all starts
};

// Root of sin(pi v) pi v + cos(pi v) - 1 on (0.1, 0.9): the stationary
// frequency v0 of the one-frequency sign objective. Bisection narrows
// the bracket, Newton polishes until |g(v0)| < 1e-13.
double solve_v0();

// Multi-start Nelder-Mead over the 2n real coordinates of the frequency
// vector. Deterministic for a fixed config: starts are drawn up front
// from a seeded generator and run serially, ties broken by first
// arrival. Reports the best frequency set found; no attainment claim.
OptimizeResult minimize_phi(const Signal& signal, const OptimizeConfig& config);

// Rectangular frequency grid scanned by explore_conjecture.
struct GridSpec {
    double u_min = -1.0;
    double u_max = 1.0;
    int u_steps = 21;
    double v_min = -2.0;
    double v_max = 2.0;
    int v_steps = 21;
};

struct PairSample {
    Complex lambda1;
    Complex lambda2;
    double phi = 0.0;
};

struct ConjectureSummary {
    long pairs_evaluated = 0;
    PairSample grid_min;                  // smallest phi over sampled pairs
    std::vector<PairSample> below_quarter; // separated pairs with phi < 1/4
    // phi({i eps, -i eps}) for eps = 0.5, 0.1, 0.02: the shrinking-pair
    // sequence, which approaches the coincident-pair limit 1/4 from below.
    std::vector<std::pair<double, double>> shrinking;
};

// Evaluates phi on all distinct non-cluster pairs drawn from the grid
// plus the shrinking conjugate pairs above. Pairs below 1/4 are
// reported as findings, never as failures: they are data about the
// two-frequency landscape. The shrinking sequence is checked against
// the 1/4 limit (within 2e-2 at eps = 0.1, within 1e-3 at eps = 0.02)
// and a violation throws InternalConsistencyError.
ConjectureSummary explore_conjecture(const GridSpec& grid,
                                     const Signal& signal);

} // namespace expsum
