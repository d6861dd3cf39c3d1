#pragma once

#include <vector>

#include "expsum/inner_product.hpp"

namespace expsum {

// Target function on [-pi, pi]: either the built-in sign function
// (handled analytically) or complex samples on a uniform grid (handled
// by composite Simpson quadrature, so the grid needs an odd point count).
//
// The sign convention takes sign(0) = +1; a single point carries no
// weight in any integral, so moments and norms are insensitive to it.
class Signal {
public:
    enum class Kind { Sign, Sampled };

    static Signal sign();

    // Grid contract: at least 5 points, odd count, endpoints -pi and pi
    // and uniform spacing, all to 1e-12. Violations throw MalformedSignal.
    static Signal sampled(std::vector<double> grid,
                          std::vector<Complex> values);

    Kind kind() const { return kind_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<Complex>& values() const { return values_; }

private:
    Signal(Kind kind, std::vector<double> grid, std::vector<Complex> values)
        : kind_(kind), grid_(std::move(grid)), values_(std::move(values)) {}

    Kind kind_;
    std::vector<double> grid_;
    std::vector<Complex> values_;
};

// b = <term | f> = (1/2pi) * integral of conj(term(x)) * f(x) dx.
// Sign signals reduce to half-interval moments; sampled signals use
// Simpson weights on their grid.
Complex moment(const ExpoPolyTerm& term, const Signal& signal);

// ||f||^2 = <f | f>. Exactly 1 for the sign signal.
double norm_sq(const Signal& signal);

} // namespace expsum
