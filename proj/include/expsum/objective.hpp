#pragma once

#include <vector>

#include "expsum/gram.hpp"
#include "expsum/signal.hpp"

namespace expsum {

// A choice of frequencies for the nonlinear layer. Frequencies closer
// than cluster_tol (transitively) are merged into one confluent cluster
// before any linear algebra runs, replacing near-parallel exponentials
// by polynomial-times-exponential terms at the cluster centroid.
struct FrequencySet {
    std::vector<Complex> lambdas;
    double cluster_tol = 1e-6;
};

// Expands a frequency set into a valid basis: one group per cluster
// (grouped by transitive closure of the tolerance relation, ordered by
// first appearance), centroid frequency, degrees 0..multiplicity-1.
Basis build_basis(const FrequencySet& freqs);

// Projects the signal onto the span of build_basis(freqs).
LinearFit best_fit(const FrequencySet& freqs, const Signal& signal);

// phi(freqs) = best_fit(freqs, signal).f_min, the squared L2 deflection
// of the signal from the chosen span.
double phi(const FrequencySet& freqs, const Signal& signal);

// Closed form of phi({u + i v}, sign) for a single frequency:
//
//   phi = 1 - (2u / (u^2 + v^2)) * (cosh(pi u) - cos(pi v))^2
//             / (pi * sinh(2 pi u))
//
// with the u -> 0 limit 1 - (1 - cos(pi v))^2 / (pi v)^2 taken below
// |u| = 1e-8, the v -> 0 limit equal to 1, and an exponent-shifted
// rewrite above |u| = 20 so large frequencies stay finite.
double phi_sign_one_freq(double u, double v);

// Closed form of phi({i v, i v}, sign), the coincident-pair limit on the
// imaginary axis. With w = pi v:
//
//   phi = 1 - (1 - cos w) * (2 w^2 cos w - 3 cos w + 3 + 4 w^2
//             - 6 w sin w) / w^4
//
// evaluated by its Taylor expansion 1/4 + w^2/8 - 5 w^4/192 below
// |w| = 0.02; the v = 0 branch returns exactly 0.25.
double phi_sign_cluster_axis(double v);

} // namespace expsum
