#pragma once

// Test-side oracles: plain composite Simpson quadrature and seeded draw
// helpers. Deliberately independent of the library's analytic moment
// code so agreement between the two is evidence, not tautology.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "expsum/inner_product.hpp"
#include "expsum/signal.hpp"

namespace oracle {

using expsum::Complex;
using expsum::ExpoPolyTerm;

inline constexpr double kPi = std::numbers::pi;

// Composite Simpson of f over [a, b] with an even number of panels.
template <class F>
Complex simpson(F&& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    Complex sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        sum += f(a + h * double(i)) * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    return sum * (h / 3.0);
}

inline Complex term_value(const ExpoPolyTerm& term, double x) {
    return std::pow(x, term.degree) * std::exp(term.lambda * x);
}

// (1/2pi) * integral over [-pi, pi] of conj(a(x)) * b(x) dx by quadrature.
inline Complex mean_inner(const ExpoPolyTerm& a, const ExpoPolyTerm& b,
                          int panels) {
    auto f = [&](double x) {
        return std::conj(term_value(a, x)) * term_value(b, x);
    };
    return simpson(f, -kPi, kPi, panels) / (2.0 * kPi);
}

// (1/2pi) * integral of conj(term(x)) * sign(x) dx, split at the jump so
// each Simpson half sees a smooth integrand.
inline Complex sign_inner(const ExpoPolyTerm& term, int panels_per_half) {
    auto f = [&](double x) { return std::conj(term_value(term, x)); };
    return (simpson(f, 0.0, kPi, panels_per_half) -
            simpson(f, -kPi, 0.0, panels_per_half)) /
           (2.0 * kPi);
}

// Sign function sampled on a uniform odd grid. The jump node x = 0
// carries the midpoint value 0: a quadrature node has finite weight, so
// storing either one-sided value there would leave an O(h) bias, while
// the midpoint keeps composite Simpson at its O(h^4) rate.
inline expsum::Signal sampled_sign(int points) {
    std::vector<double> grid(points);
    std::vector<Complex> values(points);
    const double h = 2.0 * kPi / double(points - 1);
    for (int i = 0; i < points; ++i) {
        grid[i] = -kPi + h * double(i);
        if (i == (points - 1) / 2) {
            values[i] = 0.0;
        } else {
            values[i] = grid[i] > 0.0 ? 1.0 : -1.0;
        }
    }
    grid.front() = -kPi;
    grid.back() = kPi;
    return expsum::Signal::sampled(std::move(grid), std::move(values));
}

// Uniform draws built directly from generator bits, stable across
// standard libraries.
struct Draw {
    std::mt19937_64 rng;

    explicit Draw(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (double(rng() >> 11) * 0x1.0p-53);
    }
};

} // namespace oracle
