#include "expsum/signal.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "expsum/errors.hpp"

namespace expsum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGridTol = 1e-12;

// Composite Simpson weight for node i of an odd-count uniform grid.
double simpson_weight(std::size_t i, std::size_t n) {
    if (i == 0 || i == n - 1) {
        return 1.0;
    }
    return (i % 2 == 1) ? 4.0 : 2.0;
}

void check_term(const ExpoPolyTerm& term) {
    if (term.degree < 0 || term.degree > kMaxMomentOrder) {
        throw std::invalid_argument("moment degree " +
                                    std::to_string(term.degree) +
                                    " outside [0, " +
                                    std::to_string(kMaxMomentOrder) + "]");
    }
    if (!std::isfinite(term.lambda.real()) ||
        !std::isfinite(term.lambda.imag())) {
        throw std::invalid_argument("non-finite frequency");
    }
}

// (1/2pi) * integral of conj(term(x)) * f(x) via Simpson on the grid.
// The conjugated term is x^k e^(mu x) with mu = conj(lambda), x real.
Complex simpson_mean(const Signal& signal, const ExpoPolyTerm& term) {
    const std::vector<double>& x = signal.grid();
    const std::vector<Complex>& f = signal.values();
    const std::size_t n = x.size();
    const Complex mu = std::conj(term.lambda);
    const double h = (x.back() - x.front()) / double(n - 1);
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const Complex basis = std::pow(x[i], term.degree) * std::exp(mu * x[i]);
        sum += simpson_weight(i, n) * basis * f[i];
    }
    return sum * h / (3.0 * 2.0 * kPi);
}

} // namespace

Signal Signal::sign() {
    return Signal(Kind::Sign, {}, {});
}

Signal Signal::sampled(std::vector<double> grid, std::vector<Complex> values) {
    const std::size_t n = grid.size();
    if (values.size() != n) {
        throw MalformedSignal("grid has " + std::to_string(n) +
                              " points but " + std::to_string(values.size()) +
                              " values");
    }
    if (n < 5) {
        throw MalformedSignal("grid needs at least 5 points, got " +
                              std::to_string(n));
    }
    if (n % 2 == 0) {
        throw MalformedSignal("grid needs an odd point count, got " +
                              std::to_string(n));
    }
    if (std::fabs(grid.front() + kPi) > kGridTol) {
        throw MalformedSignal("grid must start at -pi, got " +
                              std::to_string(grid.front()));
    }
    if (std::fabs(grid.back() - kPi) > kGridTol) {
        throw MalformedSignal("grid must end at pi, got " +
                              std::to_string(grid.back()));
    }
    const double h = (grid.back() - grid.front()) / double(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        if (std::fabs(grid[i] - grid[i - 1] - h) > kGridTol) {
            throw MalformedSignal("grid spacing breaks at point " +
                                  std::to_string(i));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(values[i].real()) ||
            !std::isfinite(values[i].imag())) {
            throw MalformedSignal("non-finite sample at point " +
                                  std::to_string(i));
        }
    }
    return Signal(Kind::Sampled, std::move(grid), std::move(values));
}

Complex moment(const ExpoPolyTerm& term, const Signal& signal) {
    check_term(term);
    if (signal.kind() == Signal::Kind::Sign) {
        // Split the integral at the jump: sign is +1 on (0, pi] and -1 on
        // [-pi, 0), and x -> -x maps the negative half onto [0, pi].
        const Complex mu = std::conj(term.lambda);
        const double parity = (term.degree % 2 == 0) ? 1.0 : -1.0;
        return integral_half(term.degree, mu) -
               parity * integral_half(term.degree, -mu);
    }
    return simpson_mean(signal, term);
}

double norm_sq(const Signal& signal) {
    if (signal.kind() == Signal::Kind::Sign) {
        return 1.0;
    }
    const std::vector<double>& x = signal.grid();
    const std::vector<Complex>& f = signal.values();
    const std::size_t n = x.size();
    const double h = (x.back() - x.front()) / double(n - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += simpson_weight(i, n) * std::norm(f[i]);
    }
    return sum * h / (3.0 * 2.0 * kPi);
}

} // namespace expsum
